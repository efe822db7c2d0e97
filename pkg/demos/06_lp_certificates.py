"""
Exact LP: tensor products and their absence
===========================================

Whether a tensor product with U(2,3) exists is a linear feasibility question
over all subsets of the product ground set.  Answers are exact: a rational
witness, or Farkas multipliers that combine the rows into 0 >= c > 0.
"""

import time

from polymat import (
    build_tensor_feasibility_system, check_tensor_axioms, ci_extension_lp, ingleton_violator_4,
    solve_feasibility, u23, verify_certificate,
)
from polymat.lp import point_table

f = u23()
t = time.perf_counter()
system = build_tensor_feasibility_system(f)
result = solve_feasibility(system)
print(f"U(2,3): {len(system.rows)} rows, feasible = {result.feasible} ({time.perf_counter() - t:.1f} s)")
print("  witness is a tensor product:", check_tensor_axioms(point_table(f, result.point), f, u23()).ok)

f = ingleton_violator_4()
t = time.perf_counter()
system = build_tensor_feasibility_system(f)
result = solve_feasibility(system)
y = result.certificate.multipliers
print(f"\nIngleton violator: {len(system.rows)} rows, feasible = {result.feasible} "
      f"({time.perf_counter() - t:.1f} s)")
print(f"  certificate uses {sum(1 for v in y if v)} rows, verifies: {verify_certificate(system, result.certificate)}")

# the same machinery on a single extension: two points of a line share nothing
r = ci_extension_lp(u23(), 0b001, 0b010)
print("\ncommon information of two points of U(2,3): f(z) =", r.witness.value(["z"]))
