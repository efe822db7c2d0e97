"""JSON formats for rank tables, representations, reports and certificates.

Rationals are written as strings, ``"3"`` or ``"-1/2"``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .ci import CIWitness
from .ingleton import IngletonReport
from .linrep import LinearRep, make_rep
from .lp import FarkasCertificate, LinearSystem
from .setfn import GroundSet, SetFunction, make_set_function

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rational(s) -> Fraction:
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str) or not _RATIONAL.match(s.strip()):
        raise ValueError(f"expected an integer or 'p/q' string, got {s!r}")
    value = Fraction(s.strip())
    return value


def set_function_to_dict(f: SetFunction) -> dict[str, Any]:
    return {
        "ground": list(f.ground.labels),
        "ranks": [{"set": f.ground.labels_of(m), "value": format_rational(v)}
                  for m, v in enumerate(f.values)],
    }


def set_function_from_dict(data: dict[str, Any]) -> SetFunction:
    try:
        ground = GroundSet(tuple(data["ground"]))
        entries: dict[tuple[str, ...], Fraction] = {}
        seen = set()
        for item in data["ranks"]:
            key = frozenset(item["set"])
            if len(key) != len(item["set"]):
                raise ValueError(f"repeated label in set {item['set']}")
            if key in seen:
                raise ValueError(f"duplicate subset {sorted(key)}")
            seen.add(key)
            entries[tuple(item["set"])] = parse_rational(item["value"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed rank table: {exc!r}") from None
    return make_set_function(ground, entries)


def rep_to_dict(rep: LinearRep) -> dict[str, Any]:
    return {
        "field": rep.p,
        "ambient_dim": rep.ambient_dim,
        "ground": list(rep.ground.labels),
        "subspaces": {lab: [list(v) for v in vs] for lab, vs in zip(rep.ground.labels, rep.generators)},
    }


def rep_from_dict(data: dict[str, Any]) -> LinearRep:
    try:
        p, d, labels, subspaces = data["field"], data["ambient_dim"], data["ground"], data["subspaces"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed representation: {exc!r}") from None
    for lab, vs in subspaces.items():
        for v in vs:
            if any(not isinstance(c, int) or not 0 <= c < p for c in v):
                raise ValueError(f"entries of {lab!r} must be integers in [0, {p})")
    return make_rep(labels, p, d, dict(subspaces))


def ingleton_report_to_dict(report: IngletonReport, ground: GroundSet) -> dict[str, Any]:
    return {
        "delta": format_rational(report.delta),
        "quadruple": [ground.labels_of(m) for m in report.quadruple],
        "satisfied": report.satisfied,
    }


def ingleton_report_from_dict(data: dict[str, Any], ground: GroundSet) -> IngletonReport:
    return IngletonReport(parse_rational(data["delta"]), tuple(ground.mask(s) for s in data["quadruple"]))


def ci_witness_to_dict(w: CIWitness, ground: GroundSet) -> dict[str, Any]:
    return {"z": w.z, "X": ground.labels_of(w.X), "Y": ground.labels_of(w.Y),
            "excess": format_rational(w.excess), "given_x": format_rational(w.given_x),
            "given_y": format_rational(w.given_y), "valid": w.valid}


def ci_witness_from_dict(data: dict[str, Any], ground: GroundSet) -> CIWitness:
    return CIWitness(data["z"], ground.mask(data["X"]), ground.mask(data["Y"]),
                     parse_rational(data["excess"]), parse_rational(data["given_x"]),
                     parse_rational(data["given_y"]))


def certificate_to_dict(system: LinearSystem, cert: FarkasCertificate) -> dict[str, Any]:
    return {
        "fingerprint": system.fingerprint(),
        "equalities": len(system.equalities),
        "inequalities": len(system.inequalities),
        "multipliers": [format_rational(y) for y in cert.multipliers],
    }


def certificate_from_dict(data: dict[str, Any], system: LinearSystem | None = None) -> FarkasCertificate:
    if system is not None and data.get("fingerprint") != system.fingerprint():
        raise ValueError("certificate fingerprint does not match the system")
    return FarkasCertificate(tuple(parse_rational(y) for y in data["multipliers"]))


def point_to_dict(system: LinearSystem, point) -> dict[str, Any]:
    return {"fingerprint": system.fingerprint(), "point": [format_rational(v) for v in point]}


def point_from_dict(data: dict[str, Any]) -> tuple[Fraction, ...]:
    return tuple(parse_rational(v) for v in data["point"])


def dumps(obj: dict[str, Any], pretty: bool = False) -> str:
    return json.dumps(obj, indent=2 if pretty else None, ensure_ascii=False)


def load_json(path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_set_function(path) -> SetFunction:
    return set_function_from_dict(load_json(path))


def load_rep(path) -> LinearRep:
    return rep_from_dict(load_json(path))


def save(path, obj: dict[str, Any], pretty: bool = True) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj, pretty))
        fh.write("\n")
