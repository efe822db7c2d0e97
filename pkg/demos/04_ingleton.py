"""
Ingleton's inequality
=====================

Every representable polymatroid satisfies it; the Vamos matroid does not.
"""

import random

from polymat import ingleton_delta, ingleton_scan, ingleton_violator_4, make_rep, rep_rank_function, vamos

v = vamos()
G = v.ground
A, B, C, D = (G.mask([x, x + "'"]) for x in "abcd")
r = ingleton_delta(v, A, B, C, D)
print("Vamos, quadruple aa' bb' cc' dd': delta =", r.delta, "| satisfied:", r.satisfied)

# four elements of rank 2 where only c,d are independent
f = ingleton_violator_4()
r = ingleton_scan(f)
print("violator, exhaustive scan:", [f.ground.labels_of(m) for m in r.quadruple], "delta", r.delta)

# random linear examples never violate it
rng = random.Random(1)
for i in range(5):
    n = rng.randint(4, 7)
    subspaces = [[tuple(rng.randrange(3) for _ in range(4)) for _ in range(2)] for _ in range(n)]
    h = rep_rank_function(make_rep([f"e{j}" for j in range(n)], 3, 4, subspaces))
    print(f"random GF(3) arrangement, n={n}: violation found = {ingleton_scan(h, 'sample', k=10_000, seed=i)}")
