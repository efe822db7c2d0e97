"""
Common information from a tensor product
========================================

A tensor product with U(2,3) yields, for any pair (X, Y), a new element z
with f(z) = f(X:Y) that is determined by X and by Y.  For representable
polymatroids this matches adding the subspace U_X & U_Y.
"""

from polymat import (
    check_1ci_via_tensor, ci_extension_from_tensor, is_common_information, kronecker, linear_ci_extension,
    rep_rank_function, u23_rep,
)
from polymat.corpus import pair_rep

rep = pair_rep()
f = rep_rank_function(rep)
g = rep_rank_function(kronecker(rep, u23_rep(2)))

ext = ci_extension_from_tensor(f, g, 0b01, 0b10)
print("extension ranks:", {",".join(ext.ground.labels_of(m)) or "{}": int(v) for m, v in enumerate(ext.values)})
w = is_common_information(ext, "z", 0b01, 0b10)
print("f(z) - f(a:b) =", w.excess, "| f(z|a) =", w.given_x, "| f(z|b) =", w.given_y)

linear = rep_rank_function(linear_ci_extension(rep, 0b01, 0b10))
print("same as the linear construction:", linear == ext)

report = check_1ci_via_tensor(f, g)
print(f"all {len(report.results)} ordered pairs give valid extensions:", report.ok)

u = rep_rank_function(u23_rep(2))
report = check_1ci_via_tensor(u, rep_rank_function(kronecker(u23_rep(2), u23_rep(2))))
print(f"U(2,3): {len(report.results)} pairs, ok = {report.ok}")
