"""Acceptance criteria 1-9.

Each criterion is a function returning ``(passed, detail)``; the pytest
wrappers assert both the outcome and the runtime limit and print one line per
criterion.  Run ``python tests/test_acceptance.py`` for the same lines
without pytest.
"""

from __future__ import annotations

import itertools
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import dim_of, random_rep, random_table, span_set  # noqa: E402

from polymat import io  # noqa: E402
from polymat.ci import check_1ci_via_tensor, ci_extension_from_tensor, is_common_information, linear_ci_extension  # noqa: E402,E501
from polymat.corpus import CORPUS_NAMES, corpus, corpus_rep, linear_corpus, pair_rep, vamos  # noqa: E402
from polymat.ingleton import ingleton_delta, ingleton_scan  # noqa: E402
from polymat.linrep import multi_intersection_dim, rep_rank_function, span_basis, triple_stats  # noqa: E402
from polymat.lp import (  # noqa: E402
    build_tensor_feasibility_system, point_table, solve_feasibility, verify_certificate,
)
from polymat.setfn import METHODS, check_polymatroid  # noqa: E402
from polymat.tensor import ProductGround, check_gentens_bounds, check_tensor_axioms, kronecker, u23, u23_rep  # noqa: E402,E501

SEED = 20261016


def tensor_table(rep):
    return rep_rank_function(kronecker(rep, u23_rep(rep.p)))


# 1 ---------------------------------------------------------------------------

def criterion_1():
    rng = random.Random(SEED)
    disagreements = positives = 0
    for _ in range(1000):
        f = random_table(rng, rng.randint(1, 4), lo=-2, hi=4, den=rng.choice([1, 2, 3, 4]))
        verdicts = {check_polymatroid(f, m).is_polymatroid for m in METHODS}
        disagreements += len(verdicts) != 1
        positives += True in verdicts
    # force some polymatroids through too: random tables rarely are one
    for _ in range(200):
        rep = random_rep(rng, rng.choice([2, 3]), rng.randint(1, 4), rng.randint(1, 4))
        f = rep_rank_function(rep)
        verdicts = {check_polymatroid(f, m).is_polymatroid for m in METHODS}
        disagreements += verdicts != {True}
    return disagreements == 0, f"{disagreements} disagreements, {positives} random polymatroids"


# 2 ---------------------------------------------------------------------------

def _bounds_all_triples(rep):
    """Check lower <= dim(U1 & U2 & U3) <= upper on every ordered subset triple.

    Subsets with equal spans have equal intersections, so
    multi_intersection_dim is called once per unordered triple of distinct
    spans and the result is spread over all ordered triples.
    """
    n, p, d = rep.ground.n, rep.p, rep.ambient_dim
    vals = np.array([int(v) for v in rep_rank_function(rep).values])
    spans: dict[tuple, int] = {}
    cls = np.array([spans.setdefault(tuple(span_basis(rep.subspace(A), p, d)), len(spans))
                    for A in range(1 << n)])
    bases = list(spans)
    K = len(bases)
    t = np.zeros((K, K, K), dtype=np.int64)
    for i, j, k in itertools.combinations_with_replacement(range(K), 3):
        dim = multi_intersection_dim([bases[i], bases[j], bases[k]], p, d)
        for a, b, c in itertools.permutations((i, j, k)):
            t[a, b, c] = dim
    q = np.arange(1 << 3 * n)
    full = (1 << n) - 1
    A1, A2, A3 = q & full, q >> n & full, q >> 2 * n & full
    r1, r2, r3 = vals[A1], vals[A2], vals[A3]
    s1, s2, s3 = vals[A2 | A3], vals[A1 | A3], vals[A1 | A2]
    s = vals[A1 | A2 | A3]
    lower = np.maximum(0, s - (s1 + s2 + s3) + r1 + r2 + r3)
    upper = np.minimum(np.minimum(r2 + r3 - s1, r1 + r3 - s2), r1 + r2 - s3)
    actual = t[cls[A1], cls[A2], cls[A3]]
    return int(((lower > actual) | (actual > upper)).sum()), len(q)


def criterion_2():
    rng = random.Random(SEED)
    bad = total = 0
    for _ in range(200):
        rep = random_rep(rng, rng.choice([2, 3]), rng.randint(1, 5), rng.randint(1, 6))
        b, m = _bounds_all_triples(rep)
        bad += b
        total += m
    return bad == 0, f"{total} triples, {bad} outside the bounds"


# 3 ---------------------------------------------------------------------------

def criterion_3():
    problems = []
    for name, rep in (("u23", u23_rep(2)), ("pair", pair_rep())):
        f = rep_rank_function(rep)
        g = tensor_table(rep)
        if not check_tensor_axioms(g, f, u23()).ok:
            problems.append(f"{name}: axioms")
        pg = ProductGround(rep.ground)
        spans = [span_set(rep.subspace(A), rep.p, rep.ambient_dim) for A in range(1 << rep.ground.n)]
        for A in itertools.product(range(1 << rep.ground.n), repeat=3):
            t = dim_of(spans[A[0]] & spans[A[1]] & spans[A[2]], rep.p)
            if g(pg.encode(*A)) != sum(f(a) for a in A) - t:
                problems.append(f"{name}: formula at {A}")
    return not problems, "exact on all triples" if not problems else "; ".join(problems[:5])


# 4 ---------------------------------------------------------------------------

def criterion_4():
    problems = []
    reps = linear_corpus(4)
    for name, rep in reps.items():
        verdict = check_gentens_bounds(tensor_table(rep), rep_rank_function(rep))
        if not verdict.ok:
            problems.append(name)
    f = u23()
    g = tensor_table(u23_rep(2))
    st = triple_stats(f, 0b001, 0b010, 0b100)
    pinned = g(ProductGround(f.ground).encode(0b001, 0b010, 0b100))
    if not (st.alpha == st.beta == 3 and pinned == 3):
        problems.append(f"singletons: alpha={st.alpha} beta={st.beta} g={pinned}")
    detail = f"{len(reps)} tensor products, singleton sandwich g = {pinned}"
    return not problems, detail if not problems else "; ".join(problems)


# 5 ---------------------------------------------------------------------------

def criterion_5():
    v = vamos()
    G = v.ground
    delta = ingleton_delta(v, *(G.mask([x, x + "'"]) for x in "abcd")).delta
    u23_scan = ingleton_scan(u23())
    rng = random.Random(SEED)
    found = []
    for i in range(20):
        rep = random_rep(rng, rng.choice([2, 3]), rng.randint(4, 8), rng.randint(2, 5))
        report = ingleton_scan(rep_rank_function(rep), "sample", k=10_000, seed=i)
        if report is not None:
            found.append(report)
    ok = delta == -1 and u23_scan is None and not found
    return ok, f"Vamos delta = {delta}, u23 scan {u23_scan}, {len(found)} violations in 20 x 10^4 samples"


# 6 ---------------------------------------------------------------------------

def criterion_6():
    problems = []
    count = 0
    for name, rep in (("u23", u23_rep(2)), ("free2", corpus_rep("free")), ("pair", pair_rep())):
        f = rep_rank_function(rep)
        report = check_1ci_via_tensor(f, tensor_table(rep), methods=METHODS)
        count += len(report.results)
        if not report.ok or len(report.results) != 4 ** f.ground.n:
            problems.append(name)
    return not problems, f"{count} pairs, failures: {problems or 'none'}"


# 7 ---------------------------------------------------------------------------

def criterion_7():
    mismatches = []
    count = 0
    for name, rep in linear_corpus(4).items():
        f = rep_rank_function(rep)
        g = tensor_table(rep)
        size = 1 << f.ground.n
        for X, Y in itertools.product(range(size), repeat=2):
            count += 1
            a = ci_extension_from_tensor(f, g, X, Y, check=False)
            b = rep_rank_function(linear_ci_extension(rep, X, Y))
            if a != b:
                mismatches.append((name, X, Y))
    return not mismatches, f"{count} pairs, {len(mismatches)} mismatches"


# 8 ---------------------------------------------------------------------------

def criterion_8_violator():
    f = corpus("ingleton-violator-4")
    system = build_tensor_feasibility_system(f)
    result = solve_feasibility(system, budget_seconds=1800)
    ok = not result.feasible and verify_certificate(system, result.certificate)
    support = 0 if result.feasible else sum(1 for y in result.certificate.multipliers if y)
    return ok, f"{len(system.rows)} rows, certificate on {support} rows"


def criterion_8_linear(name):
    rep = linear_corpus(3)[name]
    f = rep_rank_function(rep)
    result = solve_feasibility(build_tensor_feasibility_system(f), budget_seconds=60)
    ok = result.feasible and check_tensor_axioms(point_table(f, result.point), f, u23()).ok
    return ok, "witness passes the tensor axioms" if ok else "no valid witness"


# 9 ---------------------------------------------------------------------------

def _rt(obj):
    return json.loads(io.dumps(obj))


def criterion_9():
    failures = []
    tables = {name: corpus(name) for name in CORPUS_NAMES}
    tables["uniform 2 4"] = corpus("uniform", 2, 4)
    for name, rep in linear_corpus(4).items():
        tables[f"rank {name}"] = rep_rank_function(rep)
        tables[f"tensor {name}"] = tensor_table(rep)
        if io.rep_from_dict(_rt(io.rep_to_dict(rep))) != rep:
            failures.append(f"rep {name}")
    for name in ("u23", "fano", "pair", "free"):
        rep = corpus_rep(name)
        if io.rep_from_dict(_rt(io.rep_to_dict(rep))) != rep:
            failures.append(f"rep {name}")
    for name, f in tables.items():
        back = io.set_function_from_dict(_rt(io.set_function_to_dict(f)))
        if back != f or any(type(v) is not Fraction for v in back.values):
            failures.append(f"table {name}")
        if f.ground.n <= 4:
            report = ingleton_scan(f) or ingleton_delta(f, 0, 0, 0, 0)
            if io.ingleton_report_from_dict(_rt(io.ingleton_report_to_dict(report, f.ground)),
                                            f.ground) != report:
                failures.append(f"ingleton {name}")
    rep = u23_rep(2)
    ext = ci_extension_from_tensor(u23(), tensor_table(rep), 0b011, 0b110)
    w = is_common_information(ext, "z", 0b011, 0b110)
    if io.ci_witness_from_dict(_rt(io.ci_witness_to_dict(w, ext.ground)), ext.ground) != w:
        failures.append("ci witness")
    f = corpus("free", 1)
    system = build_tensor_feasibility_system(f)
    point = solve_feasibility(system).point
    if io.point_from_dict(_rt(io.point_to_dict(system, point))) != point:
        failures.append("witness point")
    # a certificate with non-trivial rationals
    from polymat.lp import FarkasCertificate, LinearSystem, Row
    small = LinearSystem(1, (), (Row.make({0: Fraction(2, 3)}, 1), Row.make({0: -1}, Fraction(-1, 7))))
    cert = solve_feasibility(small).certificate
    if io.certificate_from_dict(_rt(io.certificate_to_dict(small, cert)), small) != cert:
        failures.append("certificate")
    if not isinstance(cert, FarkasCertificate):
        failures.append("certificate type")
    return not failures, f"{len(tables)} tables and all reports bit-exact" if not failures else str(failures)


# -----------------------------------------------------------------------------

CRITERIA = [
    ("1", "three polymatroid checks agree", criterion_1, 10),
    ("2", "intersection bounds on random representations", criterion_2, 60),
    ("3", "tensor rank formula", criterion_3, 30),
    ("4", "tensor bounds on corpus products", criterion_4, 60),
    ("5", "Ingleton checks", criterion_5, 60),
    ("6", "CI extensions from tensors, all pairs", criterion_6, 60),
    ("7", "tensor and linear CI extensions agree", criterion_7, None),
    ("8a", "violator has no tensor product", criterion_8_violator, 1800),
] + [
    (f"8{chr(ord('b') + i)}", f"tensor product found for {name}",
     (lambda name=name: criterion_8_linear(name)), 60)
    for i, name in enumerate(linear_corpus(3))
] + [
    ("9", "JSON round trips", criterion_9, None),
]


def run_criterion(number, title, fn, limit):
    start = time.perf_counter()
    passed, detail = fn()
    elapsed = time.perf_counter() - start
    in_time = limit is None or elapsed < limit
    status = "PASS" if passed and in_time else "FAIL"
    budget = f"< {limit} s" if limit is not None else "no limit"
    print(f"criterion {number}: {status}  {title}: {detail} [{elapsed:.1f} s, {budget}]", flush=True)
    return passed, in_time, elapsed


@pytest.mark.parametrize("number,title,fn,limit", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(number, title, fn, limit, capsys):
    with capsys.disabled():
        passed, in_time, elapsed = run_criterion(number, title, fn, limit)
    assert passed
    assert in_time, f"took {elapsed:.1f} s, limit {limit} s"


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    sys.exit(0 if all(p and t for p, t, _ in results) else 1)
