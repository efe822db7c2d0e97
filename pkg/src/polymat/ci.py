"""Common information extensions.

A new element ``z`` is a common information for ``(X, Y)`` when
``f(z) = f(X:Y)`` and ``f(z|X) = f(z|Y) = 0``.  Two constructions are
provided: the linear one (add ``U_X & U_Y`` to a representation) and the one
that reads the extension off a tensor product with U(2,3):
``f(Az) = g(X^1 Y^2 A^3) - f(XY)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .linrep import LinearRep, intersection_basis, multi_intersection_dim, rep_rank_function
from .setfn import GroundSet, PolymatroidVerdict, SetFunction, check_polymatroid, conditional, is_extension
from .tensor import ProductGround, check_tensor_axioms, u23


def extension_ground(ground: GroundSet, z: str | None = None) -> GroundSet:
    """``ground`` plus a new last element, named ``z`` (or ``z1``, ``z2``, ... on collision)."""
    if z is None:
        z = "z"
        i = 0
        while z in ground.labels:
            i += 1
            z = f"z{i}"
    elif z in ground.labels:
        raise ValueError(f"label {z!r} already in the ground set")
    return GroundSet(ground.labels + (z,))


@dataclass(frozen=True)
class CIWitness:
    z: str
    X: int
    Y: int
    excess: Fraction        # f(z) - f(X:Y)
    given_x: Fraction       # f(z|X)
    given_y: Fraction       # f(z|Y)

    @property
    def valid(self) -> bool:
        return self.excess == 0 and self.given_x == 0 and self.given_y == 0


def is_common_information(f_ext: SetFunction, z: str, X: int, Y: int) -> CIWitness:
    """Evaluate the three common-information conditions for ``z`` and ``(X, Y)``.

    ``X`` and ``Y`` are masks in ``f_ext``'s ground set and must avoid ``z``.
    """
    if z not in f_ext.ground.labels:
        raise ValueError(f"label {z!r} not in the ground set")
    Z = f_ext.ground.mask(z)
    if (X | Y) & Z:
        raise ValueError("X and Y must not contain z")
    excess = f_ext(Z) - conditional(f_ext, X, Y, 0)
    return CIWitness(z, X, Y, excess, conditional(f_ext, Z, Z, X), conditional(f_ext, Z, Z, Y))


def linear_ci_extension(rep: LinearRep, X: int, Y: int, z: str | None = None) -> LinearRep:
    """Add ``V_z = U_X & U_Y`` to ``rep``."""
    d, p = rep.ambient_dim, rep.p
    UX, UY = rep.subspace(X), rep.subspace(Y)
    Vz = tuple(intersection_basis(UX, UY, p, d))
    ext = LinearRep(extension_ground(rep.ground, z), p, d, rep.generators + (Vz,))

    f = rep_rank_function(ext)
    n = rep.ground.n
    zbit = 1 << n
    for A in range(1 << n):
        dim = multi_intersection_dim([UX, UY, rep.subspace(A)], p, d)
        assert f(A | zbit) == f(zbit) + f(A) - dim, A
    return ext


def ci_extension_from_tensor(f: SetFunction, g: SetFunction, X: int, Y: int, z: str | None = None,
                             *, check: bool = True) -> SetFunction:
    """Extension of ``f`` by ``z`` with ``f(Az) = g(X^1 Y^2 A^3) - f(XY)``.

    ``g`` must be a tensor product of ``f`` with U(2,3); this is verified
    unless ``check=False`` (for callers that already did).
    """
    pg = ProductGround(f.ground)
    if check:
        verdict = check_tensor_axioms(g, f, u23())
        if not verdict.ok:
            raise ValueError("g is not a tensor product of f with U(2,3)")
    fXY = f(X | Y)
    tail = tuple(g(pg.encode(X, Y, A)) - fXY for A in range(1 << f.ground.n))
    return SetFunction(extension_ground(f.ground, z), f.values + tail)


@dataclass(frozen=True)
class PairResult:
    X: int
    Y: int
    extension: SetFunction
    polymatroid: PolymatroidVerdict
    witness: CIWitness
    extends: bool

    @property
    def ok(self) -> bool:
        return self.polymatroid.is_polymatroid and self.witness.valid and self.extends


@dataclass(frozen=True)
class OneCIReport:
    results: tuple[PairResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> list[PairResult]:
        return [r for r in self.results if not r.ok]


def check_1ci_via_tensor(f: SetFunction, g: SetFunction,
                         pairs: Iterable[tuple[int, int]] | None = None,
                         methods: Iterable[str] = ("elemental",)) -> OneCIReport:
    """Build the tensor-derived CI extension for every pair and validate it.

    By default every ordered pair ``(X, Y)`` of subsets is used, including
    equal and empty ones.
    """
    ProductGround(f.ground)
    verdict = check_tensor_axioms(g, f, u23())
    if not verdict.ok:
        raise ValueError("g is not a tensor product of f with U(2,3)")
    if pairs is None:
        size = 1 << f.ground.n
        pairs = [(X, Y) for X in range(size) for Y in range(size)]
    methods = tuple(methods)
    results = []
    for X, Y in pairs:
        ext = ci_extension_from_tensor(f, g, X, Y, check=False)
        verdicts = [check_polymatroid(ext, m) for m in methods]
        poly = next((v for v in verdicts if not v.is_polymatroid), verdicts[0])
        z = ext.ground.labels[-1]
        results.append(PairResult(X, Y, ext, poly, is_common_information(ext, z, X, Y),
                                  is_extension(ext, f)))
    return OneCIReport(tuple(results))
