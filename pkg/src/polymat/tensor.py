"""Tensor products of polymatroids, mostly with the uniform matroid U(2,3).

The product ground set ``E1 x E2`` is ordered with the second factor as the
major index: element ``(x, y)`` sits at position ``index(y) * n1 + index(x)``
and is labelled ``"x@y"``.  With the second factor U(2,3) (labels ``1,2,3``)
a subset ``A1^1 A2^2 A3^3`` is therefore just the bit concatenation
``A1 | A2 << n | A3 << 2n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linrep import LinearRep, TripleStats, rep_rank_function, triple_stats
from .setfn import MAX_GROUND, GroundSet, PolymatroidVerdict, SetFunction, check_polymatroid, from_rank

__all__ = [
    "ProductGround", "TensorVerdict", "TripleStats", "u23", "u23_rep", "uniform",
    "product_labels", "product_mask", "kronecker", "check_tensor_axioms",
    "triple_stats", "check_gentens_bounds",
]

U23_LABELS = ("1", "2", "3")


def product_labels(g1: GroundSet, g2: GroundSet) -> tuple[str, ...]:
    return tuple(f"{x}@{y}" for y in g2.labels for x in g1.labels)


def product_mask(X: int, Y: int, n1: int, n2: int) -> int:
    """Mask of ``X x Y`` in the product ground set."""
    out = 0
    for j in range(n2):
        if Y >> j & 1:
            out |= X << (j * n1)
    return out


@dataclass(frozen=True)
class ProductGround:
    """``E x {1,2,3}`` for a base ground set ``E``."""

    base: GroundSet

    def __post_init__(self):
        if 3 * self.base.n > MAX_GROUND:
            raise ValueError(
                f"product ground too large: 3 * {self.base.n} elements exceeds the cap of {MAX_GROUND}")

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def ground(self) -> GroundSet:
        return GroundSet(product_labels(self.base, GroundSet(U23_LABELS)))

    def index(self, label: str, i: int) -> int:
        return (i - 1) * self.n + self.base.index(label)

    def encode(self, A1: int, A2: int, A3: int) -> int:
        for A in (A1, A2, A3):
            self.base.check_mask(A)
        return A1 | A2 << self.n | A3 << 2 * self.n

    def decode(self, mask: int) -> tuple[int, int, int]:
        full = self.base.full
        return mask & full, mask >> self.n & full, mask >> 2 * self.n & full


@dataclass(frozen=True)
class TensorVerdict:
    ok: bool
    # (X, Y) pairs with g(X x Y) != f1(X) f2(Y), or (A1, A2, A3) bound violations
    failures: tuple = ()
    polymatroid: PolymatroidVerdict | None = None
    stage: str = "axioms"


def uniform(k: int, n: int) -> SetFunction:
    """Rank function of the uniform matroid U(k, n), labels ``1..n``."""
    return from_rank([str(i) for i in range(1, n + 1)], lambda m: min(m.bit_count(), k))


def u23() -> SetFunction:
    return uniform(2, 3)


def u23_rep(p: int = 2) -> LinearRep:
    """Three pairwise independent lines of GF(p)^2."""
    return LinearRep(GroundSet(U23_LABELS), p, 2, (((1, 0),), ((0, 1),), ((1, 1),)))


def kronecker(rep1: LinearRep, rep2: LinearRep) -> LinearRep:
    """Tensor product of two representations: ``V_(x,y) = V_x (x) W_y``."""
    if rep1.p != rep2.p:
        raise ValueError(f"field mismatch: GF({rep1.p}) vs GF({rep2.p})")
    n1, n2 = rep1.ground.n, rep2.ground.n
    ground = GroundSet(product_labels(rep1.ground, rep2.ground))
    gens = []
    for j in range(n2):
        for i in range(n1):
            gens.append(tuple(
                tuple(int(c) for c in np.kron(u, w) % rep1.p)
                for u in rep1.generators[i] for w in rep2.generators[j]))
    rep = LinearRep(ground, rep1.p, rep1.ambient_dim * rep2.ambient_dim, tuple(gens))

    f1 = _ranks(rep1)
    f2 = _ranks(rep2)
    for X in range(1 << n1):
        for Y in range(1 << n2):
            assert rep.rank(product_mask(X, Y, n1, n2)) == f1[X] * f2[Y], (X, Y)
    return rep


def _ranks(rep: LinearRep) -> list[int]:
    if rep.ground.n <= MAX_GROUND:
        return [int(v) for v in rep_rank_function(rep).values]
    return [rep.rank(m) for m in range(1 << rep.ground.n)]


def check_tensor_axioms(g: SetFunction, f1: SetFunction, f2: SetFunction) -> TensorVerdict:
    """Check that ``g`` is a polymatroid with ``g(X x Y) = f1(X) f2(Y)``."""
    if g.ground.labels != product_labels(f1.ground, f2.ground):
        raise ValueError("ground-set mismatch: g must live on f1 x f2 with labels 'x@y'")
    n1, n2 = f1.ground.n, f2.ground.n
    failures = tuple(
        (X, Y)
        for X in range(1 << n1) for Y in range(1 << n2)
        if g(product_mask(X, Y, n1, n2)) != f1(X) * f2(Y))
    verdict = check_polymatroid(g)
    return TensorVerdict(not failures and verdict.is_polymatroid, failures, verdict, "axioms")


def _common_scale(*fs: SetFunction) -> list[np.ndarray]:
    scale = 1
    for f in fs:
        for v in f.values:
            scale = math.lcm(scale, v.denominator)
    out = []
    for f in fs:
        ints = [v.numerator * (scale // v.denominator) for v in f.values]
        out.append(np.array(ints, dtype=np.int64 if max(map(abs, ints)) < 2**58 else object))
    return out


def check_gentens_bounds(g: SetFunction, f: SetFunction, *, check_tensor: bool = True) -> TensorVerdict:
    """Scan ``beta <= g(A1^1 A2^2 A3^3) <= alpha`` over all triples of subsets.

    When ``check_tensor`` is set (the default) ``g`` is first checked to be a
    tensor product of ``f`` with U(2,3); a failure there is returned with
    ``stage="axioms"`` and the bounds are not scanned.
    """
    pg = ProductGround(f.ground)
    if check_tensor:
        pre = check_tensor_axioms(g, f, u23())
        if not pre.ok:
            return pre
    elif g.ground.n != 3 * f.ground.n:
        raise ValueError("ground-set mismatch: g must live on E x {1,2,3}")
    gv, fv = _common_scale(g, f)
    n = pg.n
    full = f.ground.full
    k = np.arange(1 << 3 * n)
    A1, A2, A3 = k & full, k >> n & full, k >> 2 * n & full
    r1, r2, r3 = fv[A1], fv[A2], fv[A3]
    s1, s2, s3 = fv[A2 | A3], fv[A1 | A3], fv[A1 | A2]
    s = fv[A1 | A2 | A3]
    alpha = np.minimum(r1 + r2 + r3, s1 + s2 + s3 - s)
    beta = np.maximum(np.maximum(s1 + r1, s2 + r2), s3 + r3)
    bad = np.nonzero((gv < beta) | (gv > alpha))[0]
    failures = tuple(pg.decode(int(m)) for m in bad)
    return TensorVerdict(not failures, failures, None, "bounds")
