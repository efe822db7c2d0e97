"""
Subspace arrangements over GF(p)
================================

A representation assigns a subspace to each element; its rank function is
the dimension of sums.  The dimension of a triple intersection is squeezed
between two bounds computed from ranks alone.
"""

import itertools

from polymat import fano, intersection_basis, make_rep, multi_intersection_dim, rep_rank_function
from polymat.linrep import triple_bounds_check

# two planes in GF(2)^3 sharing the line <e2>
rep = make_rep(("a", "b"), 2, 3, {"a": [(1, 0, 0), (0, 1, 0)], "b": [(0, 1, 0), (0, 0, 1)]})
f = rep_rank_function(rep)
print("ranks:", dict(zip(["{}", "a", "b", "ab"], map(int, f.values))))
print("a & b =", intersection_basis(rep.subspace(1), rep.subspace(2), 2))

# the Fano plane: every line has rank 2
F = fano()
print("\nFano rank of {1,2,3}:", F.value(["1", "2", "3"]), "| of {1,2,4}:", F.value(["1", "2", "4"]))

# three lines through the origin of GF(3)^2
lines = make_rep("xyz", 3, 2, [[(1, 0)], [(0, 1)], [(1, 1)]])
g = rep_rank_function(lines)
worst = 0
for A in itertools.product(range(8), repeat=3):
    b = triple_bounds_check(lines, *A, f=g)
    assert b.holds
    worst = max(worst, b.upper - b.lower)
print("\nall 512 triples within bounds; widest gap between bounds:", worst)
print("x & y & xy-plane:", multi_intersection_dim([[(1, 0)], [(0, 1)], [(1, 0), (0, 1)]], 3))
