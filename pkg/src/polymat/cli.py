"""Command line front end.

Every command prints one JSON document on stdout.  Exit codes: 0 when the
property holds (or the system is feasible), 1 when it fails, 2 on usage or
input errors.  File arguments default to ``-`` (stdin).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Any, Sequence

from . import io
from .ci import check_1ci_via_tensor, ci_extension_from_tensor, is_common_information, linear_ci_extension
from .corpus import corpus, corpus_rep
from .ingleton import EXHAUSTIVE_MAX_N, ingleton_delta, ingleton_scan
from .linrep import rep_rank_function
from .lp import BudgetExceeded, build_tensor_feasibility_system, point_table, solve_feasibility
from .setfn import MAX_GROUND, METHODS, GroundSet, check_polymatroid, is_matroid
from .tensor import check_gentens_bounds, check_tensor_axioms, kronecker, u23


class UsageError(Exception):
    pass


def _read(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        return io.load_json(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _subset(ground: GroundSet, text: str) -> int:
    text = text.strip()
    if not text:
        return 0
    return ground.mask([t.strip() for t in text.split(",")])


def _labels(ground: GroundSet, mask: int) -> list[str]:
    return ground.labels_of(mask)


def _emit(args, obj: dict[str, Any]) -> None:
    print(io.dumps(obj, args.pretty))


def _write(path: str | None, obj: dict[str, Any]) -> None:
    if path:
        io.save(path, obj)


def cmd_validate(args) -> int:
    f = io.set_function_from_dict(_read(args.f))
    methods = METHODS if args.method == "all" else (
        "conditional_all" if args.method == "conditional" else args.method,)
    verdicts = {m: check_polymatroid(f, m) for m in methods}
    ok = {v.is_polymatroid for v in verdicts.values()}
    if len(ok) != 1:
        raise AssertionError("polymatroid checks disagree")
    report: dict[str, Any] = {"is_polymatroid": ok.pop(), "methods": {}}
    for m, v in verdicts.items():
        entry: dict[str, Any] = {"is_polymatroid": v.is_polymatroid}
        if not v.is_polymatroid:
            entry["reason"] = v.reason
            if v.witness is not None:
                X, Y, Z = v.witness
                entry["witness"] = {"X": _labels(f.ground, X), "Y": _labels(f.ground, Y),
                                    "Z": _labels(f.ground, Z), "value": io.format_rational(v.value)}
        report["methods"][m] = entry
    if report["is_polymatroid"]:
        report["is_matroid"] = is_matroid(f)
    _emit(args, report)
    return 0 if report["is_polymatroid"] else 1


def cmd_rank(args) -> int:
    rep = io.rep_from_dict(_read(args.rep))
    if rep.ground.n > MAX_GROUND:
        raise UsageError("representation too large for a rank table")
    _emit(args, io.set_function_to_dict(rep_rank_function(rep)))
    return 0


def cmd_ingleton(args) -> int:
    f = io.set_function_from_dict(_read(args.f))
    if args.quadruple:
        report = ingleton_delta(f, *(_subset(f.ground, q) for q in args.quadruple))
    elif args.sample is not None:
        report = ingleton_scan(f, "sample", k=args.sample, seed=args.seed)
    elif args.exhaustive or f.ground.n <= EXHAUSTIVE_MAX_N:
        report = ingleton_scan(f, "exhaustive")
    else:
        report = ingleton_scan(f, "sample", k=10_000, seed=args.seed)
    if report is None:
        _emit(args, {"delta": None, "quadruple": None, "satisfied": True})
        return 0
    _emit(args, io.ingleton_report_to_dict(report, f.ground))
    return 0 if report.satisfied else 1


def cmd_tensor_kron(args) -> int:
    rep = kronecker(io.rep_from_dict(_read(args.rep1)), io.rep_from_dict(_read(args.rep2)))
    _write(args.output, io.rep_to_dict(rep))
    if rep.ground.n > MAX_GROUND:
        raise UsageError("product representation too large for a rank table")
    _emit(args, io.set_function_to_dict(rep_rank_function(rep)))
    return 0


def _verdict_dict(f, verdict) -> dict[str, Any]:
    out: dict[str, Any] = {"ok": verdict.ok, "stage": verdict.stage}
    if verdict.stage == "axioms":
        out["failures"] = [[_labels(f.ground, X), _labels(u23().ground, Y)] for X, Y in verdict.failures]
        if verdict.polymatroid is not None:
            out["polymatroid"] = verdict.polymatroid.is_polymatroid
    else:
        out["failures"] = [[_labels(f.ground, A) for A in t] for t in verdict.failures]
    return out


def cmd_tensor_check(args) -> int:
    g = io.set_function_from_dict(_read(args.g))
    f = io.set_function_from_dict(_read(args.f))
    axioms = check_tensor_axioms(g, f, u23())
    report = {"ok": axioms.ok, "axioms": _verdict_dict(f, axioms)}
    if axioms.ok:
        bounds = check_gentens_bounds(g, f, check_tensor=False)
        report["bounds"] = _verdict_dict(f, bounds)
        report["ok"] = bounds.ok
    _emit(args, report)
    return 0 if report["ok"] else 1


def cmd_tensor_search(args) -> int:
    f = io.set_function_from_dict(_read(args.f))
    system = build_tensor_feasibility_system(f)
    try:
        result = solve_feasibility(system, budget_seconds=args.budget_seconds)
    except BudgetExceeded as exc:
        raise UsageError(str(exc)) from None
    if result.feasible:
        table = io.set_function_to_dict(point_table(f, result.point))
        report = {"feasible": True, "fingerprint": system.fingerprint(), "witness": table}
    else:
        report = {"feasible": False, "certificate": io.certificate_to_dict(system, result.certificate)}
    _write(args.output, report)
    _emit(args, report)
    return 0 if result.feasible else 1


def cmd_ci_extend(args) -> int:
    f = io.set_function_from_dict(_read(args.f))
    g = io.set_function_from_dict(_read(args.tensor))
    ext = ci_extension_from_tensor(f, g, _subset(f.ground, args.x), _subset(f.ground, args.y), args.z)
    out = io.set_function_to_dict(ext)
    _write(args.output, out)
    _emit(args, out)
    return 0


def cmd_ci_extend_linear(args) -> int:
    rep = io.rep_from_dict(_read(args.rep))
    ext = linear_ci_extension(rep, _subset(rep.ground, args.x), _subset(rep.ground, args.y), args.z)
    out = io.rep_to_dict(ext)
    _write(args.output, out)
    _emit(args, out)
    return 0


def cmd_ci_check(args) -> int:
    f = io.set_function_from_dict(_read(args.f))
    w = is_common_information(f, args.z, _subset(f.ground, args.x), _subset(f.ground, args.y))
    _emit(args, io.ci_witness_to_dict(w, f.ground))
    return 0 if w.valid else 1


def cmd_ci_all_pairs(args) -> int:
    f = io.set_function_from_dict(_read(args.f))
    g = io.set_function_from_dict(_read(args.tensor))
    report = check_1ci_via_tensor(f, g)
    _emit(args, {
        "ok": report.ok,
        "pairs": len(report.results),
        "failures": [[_labels(f.ground, r.X), _labels(f.ground, r.Y)] for r in report.failures],
    })
    return 0 if report.ok else 1


def cmd_corpus(args) -> int:
    if args.rep:
        _emit(args, io.rep_to_dict(corpus_rep(args.name, args.field)))
    else:
        _emit(args, io.set_function_to_dict(corpus(args.name, *args.params)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polymat", description="Exact polymatroid toolkit.")
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $POLYMAT_THREADS or 1)")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the polymatroid axioms")
    p.add_argument("f", nargs="?", default="-")
    p.add_argument("--method", choices=["direct", "conditional", "elemental", "all"], default="all")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("rank", help="rank table of a representation")
    p.add_argument("rep", nargs="?", default="-")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("ingleton", help="evaluate or scan Ingleton's inequality")
    p.add_argument("f", nargs="?", default="-")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--quadruple", nargs=4, metavar=("A", "B", "C", "D"))
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--sample", type=int, metavar="K")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_ingleton)

    tensor = sub.add_parser("tensor", help="tensor products with U(2,3)").add_subparsers(
        dest="tensor_command", required=True)
    p = tensor.add_parser("kron", help="Kronecker product of two representations")
    p.add_argument("rep1")
    p.add_argument("rep2")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_tensor_kron)
    p = tensor.add_parser("check", help="check g against f x U(2,3)")
    p.add_argument("g")
    p.add_argument("f")
    p.set_defaults(func=cmd_tensor_check)
    p = tensor.add_parser("search", help="decide whether f admits a tensor product with U(2,3)")
    p.add_argument("f", nargs="?", default="-")
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_tensor_search)

    ci = sub.add_parser("ci", help="common information extensions").add_subparsers(
        dest="ci_command", required=True)
    p = ci.add_parser("extend", help="extension read off a tensor product")
    p.add_argument("f")
    p.add_argument("--tensor", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--z", default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_ci_extend)
    p = ci.add_parser("extend-linear", help="add U_X & U_Y to a representation")
    p.add_argument("rep")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--z", default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_ci_extend_linear)
    p = ci.add_parser("check", help="common information conditions for z")
    p.add_argument("f", nargs="?", default="-")
    p.add_argument("--z", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_ci_check)
    p = ci.add_parser("all-pairs", help="tensor-derived CI extension for every pair")
    p.add_argument("f")
    p.add_argument("--tensor", required=True)
    p.set_defaults(func=cmd_ci_all_pairs)

    p = sub.add_parser("corpus", help="emit a built-in rank table or representation")
    p.add_argument("name")
    p.add_argument("params", nargs="*", help="e.g. 'uniform 2 4'")
    p.add_argument("--rep", action="store_true", help="emit the representation instead")
    p.add_argument("--field", type=int, default=2)
    p.set_defaults(func=cmd_corpus)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.threads is None:
        try:
            args.threads = int(os.environ.get("POLYMAT_THREADS", "1"))
        except ValueError:
            args.threads = 0
    if args.threads < 1:
        print("polymat: error: thread count must be a positive integer", file=sys.stderr)
        return 2
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"polymat: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
