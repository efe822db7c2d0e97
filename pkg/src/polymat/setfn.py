"""Exact set functions on small ground sets.

Subsets are plain ``int`` bitmasks: bit ``i`` is set iff the ``i``-th label of
the ground set belongs to the subset, so unions, intersections and differences
are ``|``, ``&`` and ``& ~``.  Values are :class:`fractions.Fraction`.

The axiom scans work on an integer copy of the table (every value multiplied
by the lcm of the denominators), which keeps them exact while letting numpy do
the enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

MAX_GROUND = 16

METHODS = ("direct", "conditional_all", "elemental")


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True)
class GroundSet:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not 0 < len(labels) <= MAX_GROUND:
            raise ValueError(f"ground set must have between 1 and {MAX_GROUND} elements, got {len(labels)}")
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise ValueError(f"labels must be non-empty strings, got {lab!r}")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be pairwise distinct")
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValueError(f"unknown label {label!r}") from None

    def mask(self, labels: Iterable[str] | str) -> int:
        """Mask of a collection of labels.  A bare string is one label."""
        if isinstance(labels, str):
            labels = [labels]
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def labels_of(self, mask: int) -> list[str]:
        self.check_mask(mask)
        return [lab for i, lab in enumerate(self.labels) if mask >> i & 1]

    def check_mask(self, mask: int) -> None:
        if not 0 <= mask <= self.full:
            raise ValueError(f"mask {mask} out of range for a ground set of size {self.n}")

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.labels)


@dataclass(frozen=True, eq=False)
class SetFunction:
    """Total table of exact values indexed by subset mask."""

    ground: GroundSet
    values: tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(_to_fraction(v) for v in self.values)
        if len(values) != 1 << self.ground.n:
            raise ValueError(f"table must have {1 << self.ground.n} entries, got {len(values)}")
        object.__setattr__(self, "values", values)

    def __call__(self, mask: int) -> Fraction:
        return self.values[mask]

    def value(self, labels: Iterable[str] | str) -> Fraction:
        return self.values[self.ground.mask(labels)]

    def __eq__(self, other):
        if not isinstance(other, SetFunction):
            return NotImplemented
        return self.ground == other.ground and self.values == other.values

    def __hash__(self):
        return hash((self.ground, self.values))

    def __repr__(self):
        return f"SetFunction(ground={list(self.ground.labels)}, rank={self.values[-1]})"

    def scaled(self) -> tuple[np.ndarray, int]:
        """Integer table ``values * L`` and the scale ``L`` (lcm of denominators)."""
        scale = 1
        for v in self.values:
            scale = math.lcm(scale, v.denominator)
        ints = [v.numerator * (scale // v.denominator) for v in self.values]
        if max(abs(i) for i in ints) < 2**60 // 8:
            return np.array(ints, dtype=np.int64), scale
        return np.array(ints, dtype=object), scale


def from_values(labels: Iterable[str], values: Iterable) -> SetFunction:
    """Build a set function from labels and a mask-ordered value list."""
    return SetFunction(GroundSet(tuple(labels)), tuple(values))


def from_rank(labels: Iterable[str], rank) -> SetFunction:
    """Tabulate ``rank(mask)`` over every subset."""
    ground = GroundSet(tuple(labels))
    return SetFunction(ground, tuple(rank(m) for m in range(1 << ground.n)))


def make_set_function(ground: GroundSet, entries: Mapping) -> SetFunction:
    """Build a set function from a map ``subset -> value``.

    Subsets are given as iterables of labels (a bare string counts as a single
    label).  Every subset must appear exactly once.
    """
    table: dict[int, Fraction] = {}
    for subset, value in entries.items():
        mask = ground.mask(subset)
        if mask in table:
            raise ValueError(f"duplicate subset {sorted(ground.labels_of(mask))}")
        table[mask] = _to_fraction(value)
    if len(table) != 1 << ground.n:
        missing = next(m for m in range(1 << ground.n) if m not in table)
        raise ValueError(f"incomplete table: missing subset {ground.labels_of(missing)}")
    return SetFunction(ground, tuple(table[m] for m in range(1 << ground.n)))


def conditional(f: SetFunction, Y: int, Z: int, X: int) -> Fraction:
    """``f(Y:Z|X) = f(XY) + f(XZ) - f(XYZ) - f(X)``.

    ``conditional(f, Y, Z, 0)`` is the mutual form ``f(Y:Z)`` and
    ``conditional(f, Y, Y, X)`` is ``f(Y|X)``.
    """
    for m in (X, Y, Z):
        f.ground.check_mask(m)
    return f(X | Y) + f(X | Z) - f(X | Y | Z) - f(X)


@dataclass(frozen=True)
class PolymatroidVerdict:
    is_polymatroid: bool
    # (X, Y, Z) with conditional(f, Y, Z, X) < 0
    witness: tuple[int, int, int] | None = None
    value: Fraction | None = None
    reason: str = ""


def _empty_violation(f: SetFunction) -> PolymatroidVerdict | None:
    if f(0) != 0:
        return PolymatroidVerdict(False, None, None, f"f(empty set) = {f(0)} is not 0")
    return None


def _verdict(f, X, Y, Z, reason):
    Y &= ~X
    Z &= ~X
    return PolymatroidVerdict(False, (X, Y, Z), conditional(f, Y, Z, X), reason)


def _check_direct(f: SetFunction) -> PolymatroidVerdict:
    vals, _ = f.scaled()
    size = len(vals)
    masks = np.arange(size)
    for X in range(size):
        # monotone: f(X) <= f(Y) for every superset Y of X
        sup = masks[(masks & X) == X]
        bad = sup[vals[sup] < vals[X]]
        if len(bad):
            return _verdict(f, X, int(bad[0]), int(bad[0]), "not monotone")
    for X in range(size):
        # submodular: f(X) + f(Y) >= f(X|Y) + f(X&Y)
        lhs = vals[X] + vals[masks]
        rhs = vals[X | masks] + vals[X & masks]
        bad = np.nonzero(lhs < rhs)[0]
        if len(bad):
            Y = int(bad[0])
            return _verdict(f, X & Y, X, Y, "not submodular")
    return PolymatroidVerdict(True)


def _check_conditional_all(f: SetFunction) -> PolymatroidVerdict:
    vals, _ = f.scaled()
    size = len(vals)
    masks = np.arange(size)
    union = masks[:, None] | masks[None, :]
    for X in range(size):
        col = vals[X | masks]
        table = col[:, None] + col[None, :] - vals[X | union] - vals[X]
        bad = np.argwhere(table < 0)
        if len(bad):
            Y, Z = (int(v) for v in bad[0])
            return _verdict(f, X, Y, Z, "negative conditional")
    return PolymatroidVerdict(True)


def _check_elemental(f: SetFunction) -> PolymatroidVerdict:
    vals, _ = f.scaled()
    n = f.ground.n
    size = len(vals)
    masks = np.arange(size)
    for y in range(n):
        for z in range(y, n):
            by, bz = 1 << y, 1 << z
            X = masks[(masks & (by | bz)) == 0]
            table = vals[X | by] + vals[X | bz] - vals[X | by | bz] - vals[X]
            bad = np.nonzero(table < 0)[0]
            if len(bad):
                return _verdict(f, int(X[bad[0]]), by, bz, "negative elemental conditional")
    return PolymatroidVerdict(True)


_CHECKS = {
    "direct": _check_direct,
    "conditional_all": _check_conditional_all,
    "elemental": _check_elemental,
}


def check_polymatroid(f: SetFunction, method: str = "elemental") -> PolymatroidVerdict:
    """Decide whether ``f`` is a polymatroid rank function.

    ``direct`` checks monotonicity over all pairs ``X <= Y`` and
    submodularity over all pairs ``X, Y``; ``conditional_all`` checks
    ``f(Y:Z|X) >= 0`` for every triple; ``elemental`` checks ``f(y:z|X) >= 0``
    for singletons ``y, z`` outside ``X`` (``y == z`` allowed, which covers
    monotonicity).  All three agree.
    """
    if method not in _CHECKS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return _empty_violation(f) or _CHECKS[method](f)


def is_polymatroid(f: SetFunction) -> bool:
    return check_polymatroid(f, "elemental").is_polymatroid


def is_matroid(f: SetFunction) -> bool:
    verdict = check_polymatroid(f)
    if not verdict.is_polymatroid:
        raise ValueError(f"not a polymatroid: {verdict.reason}")
    for mask, v in enumerate(f.values):
        if v.denominator != 1 or v < 0 or v > mask.bit_count():
            return False
    return True


def _deposit(sub: int, positions: list[int]) -> int:
    out = 0
    for j, pos in enumerate(positions):
        if sub >> j & 1:
            out |= 1 << pos
    return out


def restrict(f: SetFunction, S: int) -> SetFunction:
    """Restriction of ``f`` to the elements of ``S`` (label order kept)."""
    f.ground.check_mask(S)
    positions = [i for i in range(f.ground.n) if S >> i & 1]
    ground = GroundSet(tuple(f.ground.labels[i] for i in positions))
    return SetFunction(ground, tuple(f(_deposit(m, positions)) for m in range(1 << len(positions))))


def is_extension(g: SetFunction, f: SetFunction) -> bool:
    """True iff ``g`` agrees with ``f`` on every subset of ``f``'s ground set."""
    missing = [lab for lab in f.ground.labels if lab not in g.ground.labels]
    if missing:
        raise ValueError(f"labels {missing} of the base are not in the extension")
    positions = [g.ground.index(lab) for lab in f.ground.labels]
    return all(g(_deposit(m, positions)) == f(m) for m in range(1 << f.ground.n))
