"""Ingleton's inequality on quadruples of subsets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .setfn import SetFunction

EXHAUSTIVE_MAX_N = 4


@dataclass(frozen=True)
class IngletonReport:
    delta: Fraction
    quadruple: tuple[int, int, int, int]

    @property
    def satisfied(self) -> bool:
        return self.delta >= 0


def ingleton_delta(f: SetFunction, A: int, B: int, C: int, D: int) -> IngletonReport:
    """LHS minus RHS of
    ``f(AB)+f(AC)+f(BC)+f(AD)+f(BD) >= f(A)+f(B)+f(ABC)+f(ABD)+f(CD)``.
    """
    for m in (A, B, C, D):
        f.ground.check_mask(m)
    lhs = f(A | B) + f(A | C) + f(B | C) + f(A | D) + f(B | D)
    rhs = f(A) + f(B) + f(A | B | C) + f(A | B | D) + f(C | D)
    return IngletonReport(lhs - rhs, (A, B, C, D))


def _deltas(vals: np.ndarray, A, B, C, D) -> np.ndarray:
    return (vals[A | B] + vals[A | C] + vals[B | C] + vals[A | D] + vals[B | D]
            - vals[A] - vals[B] - vals[A | B | C] - vals[A | B | D] - vals[C | D])


def ingleton_scan(f: SetFunction, mode: str = "exhaustive", *, k: int = 10_000,
                  seed: int = 0) -> IngletonReport | None:
    """Look for a violated Ingleton quadruple.

    ``mode="exhaustive"`` walks all ``2**(4n)`` quadruples (``n <= 4``);
    ``mode="sample"`` draws ``k`` quadruples from a seeded generator.  Either
    way the lexicographically smallest violation found is returned, or None.
    """
    vals, _ = f.scaled()
    n = f.ground.n
    if mode == "exhaustive":
        if n > EXHAUSTIVE_MAX_N:
            raise ValueError(f"exhaustive scan needs n <= {EXHAUSTIVE_MAX_N}, got n = {n}")
        q = np.arange(1 << 4 * n)
        full = f.ground.full
        A, B, C, D = q >> 3 * n, q >> 2 * n & full, q >> n & full, q & full
    elif mode == "sample":
        rng = np.random.default_rng(seed)
        A, B, C, D = rng.integers(0, 1 << n, size=(4, k))
    else:
        raise ValueError(f"unknown scan mode {mode!r}")
    bad = np.nonzero(_deltas(vals, A, B, C, D) < 0)[0]
    if not len(bad):
        return None
    quads = sorted((int(A[i]), int(B[i]), int(C[i]), int(D[i])) for i in bad)
    return ingleton_delta(f, *quads[0])
