"""
Checking the polymatroid axioms
===============================

Three checks that must always agree: the definition, every conditional
mutual information, and the elemental ones only.
"""

from fractions import Fraction

from polymat import check_polymatroid, from_values, is_matroid, u23, vamos
from polymat.setfn import METHODS, conditional

# U(2,3): three points on a line
f = u23()
print("U(2,3) ranks:", [int(v) for v in f.values])
for m in METHODS:
    print(f"  {m:16s}", check_polymatroid(f, m).is_polymatroid)
print("  matroid:", is_matroid(f))

# f(1:2) = 0, but once 3 is known the two points determine each other
print("f(1:2)   =", conditional(f, 0b001, 0b010, 0))
print("f(1:2|3) =", conditional(f, 0b001, 0b010, 0b100))

# a table that is not monotone: adding b to a loses rank
bad = from_values("ab", [0, 2, 0, 1])
v = check_polymatroid(bad)
X, Y, Z = v.witness
print("\nnon-monotone table:", v.reason)
print("  witness X,Y,Z =", bad.ground.labels_of(X), bad.ground.labels_of(Y), bad.ground.labels_of(Z),
      "value", v.value)

# rational values stay exact
half = from_values("123", [Fraction(min(bin(m).count("1"), 2), 2) for m in range(8)])
print("\nhalf-scaled U(2,3) is a polymatroid:", check_polymatroid(half).is_polymatroid,
      "| matroid:", is_matroid(half))

# the Vamos matroid: 8 elements, 256 subsets
print("Vamos is a polymatroid:", check_polymatroid(vamos(), "direct").is_polymatroid)
