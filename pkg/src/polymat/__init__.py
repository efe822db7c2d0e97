"""Exact computations with polymatroids.

Rank tables are indexed by bitmasks over a labelled ground set and hold
``Fraction`` values.  The modules cover the polymatroid axioms (``setfn``),
subspace arrangements over GF(p) (``linrep``), tensor products with U(2,3)
(``tensor``), Ingleton's inequality (``ingleton``), common information
extensions (``ci``) and exact LP feasibility with Farkas certificates (``lp``).
"""

from .ci import CIWitness, check_1ci_via_tensor, ci_extension_from_tensor, is_common_information, linear_ci_extension
from .corpus import corpus, corpus_rep, fano, ingleton_violator_4, linear_corpus, vamos
from .ingleton import IngletonReport, ingleton_delta, ingleton_scan
from .linrep import LinearRep, ff_rank, intersection_basis, make_rep, multi_intersection_dim, rep_rank_function
from .lp import (
    FarkasCertificate, Feasible, Infeasible, LinearSystem, build_tensor_feasibility_system, ci_extension_lp,
    solve_feasibility, verify_certificate,
)
from .setfn import GroundSet, SetFunction, check_polymatroid, from_values, is_matroid, make_set_function
from .tensor import check_gentens_bounds, check_tensor_axioms, kronecker, u23, u23_rep, uniform

__version__ = "0.1.0"

__all__ = [
    "CIWitness", "FarkasCertificate", "Feasible", "GroundSet", "Infeasible", "IngletonReport",
    "LinearRep", "LinearSystem", "SetFunction", "build_tensor_feasibility_system",
    "check_1ci_via_tensor", "check_gentens_bounds", "check_polymatroid", "check_tensor_axioms",
    "ci_extension_from_tensor", "ci_extension_lp", "corpus", "corpus_rep", "fano", "ff_rank",
    "from_values", "ingleton_delta", "ingleton_scan", "ingleton_violator_4", "intersection_basis",
    "is_common_information", "is_matroid", "kronecker", "linear_ci_extension", "linear_corpus",
    "make_rep", "make_set_function", "multi_intersection_dim", "rep_rank_function",
    "solve_feasibility", "u23", "u23_rep", "uniform", "vamos", "verify_certificate",
]
