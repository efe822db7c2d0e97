"""Linear representations over prime fields GF(p).

Vectors are tuples of ints in ``[0, p)``.  Elimination is done on small
int64 numpy arrays; every routine pivots on the first nonzero column and the
first nonzero row below the current pivot row, so returned bases are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .setfn import GroundSet, SetFunction, check_polymatroid

Vector = tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"field size must be prime, got {p!r}")
    if p >= 2**31:
        raise ValueError("field size must fit the int64 elimination (p < 2**31)")


def _matrix(vectors: Sequence[Sequence[int]], p: int, d: int | None = None) -> np.ndarray:
    rows = [tuple(int(x) for x in v) for v in vectors]
    if d is None:
        d = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != d:
            raise ValueError(f"ragged vectors: expected length {d}, got {len(r)}")
    if not rows:
        return np.zeros((0, d), dtype=np.int64)
    return np.array(rows, dtype=np.int64) % p


def row_reduce(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``M`` over GF(p) and its pivot columns."""
    R = np.array(M, dtype=np.int64) % p
    m, n = R.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(R[row:, col])[0]
        if len(nz) == 0:
            continue
        k = row + nz[0]
        if k != row:
            R[[row, k]] = R[[k, row]]
        R[row] = R[row] * pow(int(R[row, col]), -1, p) % p
        others = np.nonzero(R[:, col])[0]
        others = others[others != row]
        if len(others):
            R[others] = (R[others] - np.outer(R[others, col], R[row])) % p
        pivots.append(col)
        row += 1
    return R[: len(pivots)], pivots


def ff_rank(vectors: Sequence[Sequence[int]], p: int, d: int | None = None) -> int:
    """Rank over GF(p) of the span of ``vectors``."""
    _check_prime(p)
    M = _matrix(vectors, p, d)
    if M.shape[0] == 0:
        return 0
    return len(row_reduce(M, p)[1])


def span_basis(vectors: Sequence[Sequence[int]], p: int, d: int | None = None) -> list[Vector]:
    """Canonical (reduced echelon) basis of the span."""
    M = _matrix(vectors, p, d)
    if M.shape[0] == 0:
        return []
    R, _ = row_reduce(M, p)
    return [tuple(int(x) for x in r) for r in R]


def nullspace(M: np.ndarray, p: int) -> list[Vector]:
    """Basis of ``{c : M c = 0}`` over GF(p)."""
    m, n = M.shape
    if m == 0:
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    R, pivots = row_reduce(M, p)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for j in free:
        c = [0] * n
        c[j] = 1
        for i, pc in enumerate(pivots):
            c[pc] = int(-R[i, j] % p)
        basis.append(tuple(c))
    return basis


@lru_cache(maxsize=1 << 16)
def _intersect(U: tuple[Vector, ...], W: tuple[Vector, ...], p: int, d: int) -> tuple[Vector, ...]:
    if not U or not W:
        return ()
    stacked = np.array(U + W, dtype=np.int64)
    # lambda.U - mu.W = 0  <=>  (lambda, -mu) in the left kernel of the stack
    kernel = nullspace(stacked.T.copy(), p)
    if not kernel:
        return ()
    lam = np.array([c[: len(U)] for c in kernel], dtype=np.int64)
    vecs = lam @ np.array(U, dtype=np.int64) % p
    return tuple(span_basis(vecs, p, d))


def intersection_basis(U: Sequence[Sequence[int]], W: Sequence[Sequence[int]], p: int,
                       d: int | None = None) -> list[Vector]:
    """Basis of ``span(U) & span(W)``, from the kernel of the stacked generators."""
    _check_prime(p)
    if d is None:
        lengths = {len(v) for v in list(U) + list(W)}
        if len(lengths) > 1:
            raise ValueError(f"dimension mismatch: vector lengths {sorted(lengths)}")
        d = lengths.pop() if lengths else 0
    Ub = tuple(span_basis(U, p, d))
    Wb = tuple(span_basis(W, p, d))
    return list(_intersect(Ub, Wb, p, d))


def multi_intersection_dim(subspaces: Sequence[Sequence[Sequence[int]]], p: int,
                           d: int | None = None) -> int:
    """Dimension of the intersection of several spans, folded pairwise."""
    if not subspaces:
        raise ValueError("need at least one subspace")
    _check_prime(p)
    if d is None:
        lengths = {len(v) for s in subspaces for v in s}
        if len(lengths) > 1:
            raise ValueError(f"dimension mismatch: vector lengths {sorted(lengths)}")
        d = lengths.pop() if lengths else 0
    acc = tuple(span_basis(subspaces[0], p, d))
    for s in subspaces[1:]:
        acc = _intersect(acc, tuple(span_basis(s, p, d)), p, d)
    return len(acc)


@dataclass(frozen=True, eq=False)
class LinearRep:
    """Subspaces ``V_x`` of GF(p)^d, one per ground element, given by generators."""

    ground: GroundSet
    p: int
    ambient_dim: int
    generators: tuple[tuple[Vector, ...], ...]

    def __post_init__(self):
        _check_prime(self.p)
        gens = tuple(tuple(tuple(int(c) for c in v) for v in vs) for vs in self.generators)
        if len(gens) != self.ground.n:
            raise ValueError(f"expected generators for {self.ground.n} elements, got {len(gens)}")
        for lab, vs in zip(self.ground.labels, gens):
            for v in vs:
                if len(v) != self.ambient_dim:
                    raise ValueError(f"generator of {lab!r} has length {len(v)}, expected {self.ambient_dim}")
                if any(not 0 <= c < self.p for c in v):
                    raise ValueError(f"generator of {lab!r} has entries outside [0, {self.p})")
        object.__setattr__(self, "generators", gens)

    def __eq__(self, other):
        if not isinstance(other, LinearRep):
            return NotImplemented
        return (self.ground, self.p, self.ambient_dim, self.generators) == (
            other.ground, other.p, other.ambient_dim, other.generators)

    def __hash__(self):
        return hash((self.ground, self.p, self.ambient_dim, self.generators))

    def subspace(self, mask: int) -> list[Vector]:
        """Generators of ``U_A``, the sum of ``V_x`` over ``x`` in ``A``."""
        self.ground.check_mask(mask)
        out: list[Vector] = []
        for i, vs in enumerate(self.generators):
            if mask >> i & 1:
                out.extend(vs)
        return out

    def rank(self, mask: int) -> int:
        return ff_rank(self.subspace(mask), self.p, self.ambient_dim)


def restrict_rep(rep: LinearRep, S: int) -> LinearRep:
    """The subspaces of the elements in ``S`` only (label order kept)."""
    rep.ground.check_mask(S)
    keep = [i for i in range(rep.ground.n) if S >> i & 1]
    if not keep:
        raise ValueError("restriction to the empty set")
    return LinearRep(GroundSet(tuple(rep.ground.labels[i] for i in keep)), rep.p, rep.ambient_dim,
                     tuple(rep.generators[i] for i in keep))


def make_rep(labels: Iterable[str], p: int, ambient_dim: int, subspaces) -> LinearRep:
    """Build a rep from labels and a list (or label-keyed map) of generator lists."""
    labels = tuple(labels)
    if isinstance(subspaces, dict):
        unknown = set(subspaces) - set(labels)
        if unknown:
            raise ValueError(f"unknown labels {sorted(unknown)}")
        subspaces = [subspaces.get(lab, []) for lab in labels]
    gens = tuple(tuple(tuple(int(c) % p for c in v) for v in vs) for vs in subspaces)
    return LinearRep(GroundSet(labels), p, ambient_dim, gens)


def rep_rank_function(rep: LinearRep) -> SetFunction:
    """``f(X) = dim(sum of V_x, x in X)`` tabulated over all subsets."""
    n, p, d = rep.ground.n, rep.p, rep.ambient_dim
    # basis of U_X built incrementally from U_{X minus its top element}
    bases: list[tuple[Vector, ...]] = [()]
    for mask in range(1, 1 << n):
        top = mask.bit_length() - 1
        prev = bases[mask ^ (1 << top)]
        new = rep.generators[top]
        bases.append(tuple(span_basis(list(prev) + list(new), p, d)) if new else prev)
    f = SetFunction(rep.ground, tuple(len(b) for b in bases))
    verdict = check_polymatroid(f)
    assert verdict.is_polymatroid, verdict
    return f


@dataclass(frozen=True)
class TripleStats:
    r: tuple[Fraction, Fraction, Fraction]
    s_pair: tuple[Fraction, Fraction, Fraction]
    s: Fraction
    t: tuple[Fraction, Fraction, Fraction]
    alpha: Fraction
    beta: Fraction


def triple_stats(f: SetFunction, A1: int, A2: int, A3: int) -> TripleStats:
    """Ranks of a subset triple and the derived ``alpha``/``beta`` bounds.

    ``s_pair[i]`` is the rank of the union of the two *other* sets.
    """
    A = (A1, A2, A3)
    r = tuple(f(a) for a in A)
    s_pair = (f(A2 | A3), f(A1 | A3), f(A1 | A2))
    s = f(A1 | A2 | A3)
    t = tuple(r[(i + 1) % 3] + r[(i + 2) % 3] - s_pair[i] for i in range(3))
    alpha = min(sum(r), sum(s_pair) - s)
    beta = max(s_pair[i] + r[i] for i in range(3))
    return TripleStats(r, s_pair, s, t, alpha, beta)


@dataclass(frozen=True)
class TripleBounds:
    lower: Fraction
    upper: Fraction
    actual: int

    @property
    def holds(self) -> bool:
        return self.lower <= self.actual <= self.upper


def triple_bounds(f: SetFunction, A1: int, A2: int, A3: int) -> tuple[Fraction, Fraction]:
    st = triple_stats(f, A1, A2, A3)
    return max(Fraction(0), st.s - sum(st.s_pair) + sum(st.r)), min(st.t)


def triple_bounds_check(rep: LinearRep, A1: int, A2: int, A3: int,
                        f: SetFunction | None = None) -> TripleBounds:
    """Compare the rank-only bounds on ``dim(U1 & U2 & U3)`` with its actual value.

    ``f`` may be passed to reuse an already computed rank table.
    """
    if f is None:
        f = rep_rank_function(rep)
    lower, upper = triple_bounds(f, A1, A2, A3)
    actual = multi_intersection_dim([rep.subspace(A) for A in (A1, A2, A3)], rep.p, rep.ambient_dim)
    return TripleBounds(lower, upper, actual)
