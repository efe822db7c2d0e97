"""Exact rational linear feasibility with Farkas certificates.

A :class:`LinearSystem` holds sparse rows ``a.x = b`` and ``a.x >= b`` over
free variables.  :func:`solve_feasibility` answers with either a rational
point satisfying every row or a :class:`FarkasCertificate`: multipliers, free
on equalities and nonnegative on inequalities, whose combination of the rows
reads ``0 >= c`` with ``c > 0``.

The core is a phase-1 simplex on an integer tableau (every row stored as
integer numerators over one positive row denominator).  Large systems start
from a floating point solve, which only proposes: a point, rounded to nearby
rationals, or the rows a certificate should live on, whose multipliers are
then solved for exactly.  Whatever the float side suggests is checked exactly
against the full system; when the check fails the exact simplex runs on a
working subset of rows, adding violated rows until the answer holds for all
of them.
"""

from __future__ import annotations

import hashlib
import importlib.util
import json
import logging
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .setfn import SetFunction, check_polymatroid, conditional
from .tensor import ProductGround, product_mask, u23

log = logging.getLogger(__name__)

TENSOR_MAX_N = 4
EXACT_ROW_LIMIT = 1500


@dataclass(frozen=True)
class Row:
    """``sum(c * x[v] for v, c in coeffs)`` compared against ``rhs``."""

    coeffs: tuple[tuple[int, Fraction], ...]
    rhs: Fraction

    @classmethod
    def make(cls, coeffs: Mapping[int, object] | Iterable[tuple[int, object]], rhs=0) -> "Row":
        acc: dict[int, Fraction] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for v, c in items:
            acc[v] = acc.get(v, Fraction(0)) + Fraction(c)
        return cls(tuple(sorted((v, c) for v, c in acc.items() if c != 0)), Fraction(rhs))

    def lhs(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * x[v] for v, c in self.coeffs), Fraction(0))


@dataclass(frozen=True)
class LinearSystem:
    n_vars: int
    equalities: tuple[Row, ...] = ()
    inequalities: tuple[Row, ...] = ()
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        for row in self.equalities + self.inequalities:
            for v, _ in row.coeffs:
                if not 0 <= v < self.n_vars:
                    raise ValueError(f"row refers to variable {v} outside [0, {self.n_vars})")

    @property
    def rows(self) -> tuple[Row, ...]:
        """Equalities first, then inequalities; certificates follow this order."""
        return self.equalities + self.inequalities

    def violations(self, x: Sequence[Fraction]) -> list[int]:
        """Indices (in :attr:`rows` order) of rows that ``x`` does not satisfy."""
        if len(x) != self.n_vars:
            raise ValueError(f"point has {len(x)} coordinates, system has {self.n_vars} variables")
        ne = len(self.equalities)
        bad = [i for i, r in enumerate(self.equalities) if r.lhs(x) != r.rhs]
        bad += [ne + i for i, r in enumerate(self.inequalities) if r.lhs(x) < r.rhs]
        return bad

    def fingerprint(self) -> str:
        def enc(rows):
            return [[[[v, str(c)] for v, c in r.coeffs], str(r.rhs)] for r in rows]
        blob = json.dumps([self.n_vars, enc(self.equalities), enc(self.inequalities)],
                          separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


@dataclass(frozen=True)
class FarkasCertificate:
    multipliers: tuple[Fraction, ...]


@dataclass(frozen=True)
class Feasible:
    point: tuple[Fraction, ...]
    witness: object = None

    feasible = True


@dataclass(frozen=True)
class Infeasible:
    certificate: FarkasCertificate

    feasible = False


def combine(system: LinearSystem, multipliers: Sequence[Fraction]) -> tuple[dict[int, Fraction], Fraction]:
    """The row combination ``sum(y_i * row_i)`` as (coefficients, rhs)."""
    coeffs: dict[int, Fraction] = {}
    rhs = Fraction(0)
    for y, row in zip(multipliers, system.rows):
        if y == 0:
            continue
        for v, c in row.coeffs:
            coeffs[v] = coeffs.get(v, Fraction(0)) + y * c
        rhs += y * row.rhs
    return {v: c for v, c in coeffs.items() if c != 0}, rhs


def verify_certificate(system: LinearSystem, cert: FarkasCertificate) -> bool:
    """True iff ``cert`` combines the rows of ``system`` into ``0 >= c > 0``."""
    y = cert.multipliers
    if len(y) != len(system.rows):
        raise ValueError(f"certificate has {len(y)} multipliers, system has {len(system.rows)} rows")
    if any(v < 0 for v in y[len(system.equalities):]):
        return False
    coeffs, rhs = combine(system, y)
    return not coeffs and rhs > 0


# -- exact phase-1 simplex --------------------------------------------------

class BudgetExceeded(TimeoutError):
    pass


def _row_scale(row: Row) -> int:
    L = row.rhs.denominator
    for _, c in row.coeffs:
        L = math.lcm(L, c.denominator)
    return L


REDUCE_ABOVE = 1 << 64


def _phase1(eqs: Sequence[Row], ineqs: Sequence[Row], deadline: float | None = None):
    """Phase-1 simplex on ``eqs`` and ``ineqs`` with free variables.

    Pricing is Dantzig's rule; after a streak of degenerate pivots it switches
    to Bland's rule until the objective moves again, which keeps the
    termination guarantee.  Returns ``("feasible", {var: value})`` or
    ``("infeasible", multipliers)`` with one multiplier per row, equalities
    first.
    """
    rows = list(eqs) + list(ineqs)
    m, n_eq = len(rows), len(eqs)
    n_ineq = m - n_eq
    used = sorted({v for r in rows for v, _ in r.coeffs})
    col = {v: j for j, v in enumerate(used)}
    k = len(used)
    # columns: x+ | x- | slacks | artificials | rhs
    slack0, art0 = 2 * k, 2 * k + n_ineq
    ncols = art0 + m + 1
    T = np.zeros((m + 1, ncols), dtype=object)
    scale, sign = [], []
    for i, r in enumerate(rows):
        L = _row_scale(r)
        b = int(r.rhs * L)
        sg = -1 if b < 0 else 1
        for v, c in r.coeffs:
            a = sg * int(c * L)
            T[i + 1, col[v]] = a
            T[i + 1, k + col[v]] = -a
        if i >= n_eq:
            T[i + 1, slack0 + i - n_eq] = -sg
        T[i + 1, art0 + i] = 1
        T[i + 1, -1] = sg * b
        scale.append(L)
        sign.append(sg)
    T[0] = -T[1:].sum(axis=0)
    T[0, art0:art0 + m] = 0
    # row i of the rational tableau is T[i] / den[i], den[i] > 0
    den = [1] * (m + 1)
    basis = [art0 + i for i in range(m)]

    pivots = degenerate = 0
    bland = False
    while True:
        obj = T[0, :art0]
        entering = np.nonzero(obj < 0)[0]
        if not len(entering):
            break
        if bland:
            c = int(entering[0])
        else:
            c = int(entering[np.argmin(obj[entering])])
        cand = np.nonzero(T[1:, c] > 0)[0] + 1
        assert len(cand), "phase-1 objective is bounded below"
        best = None
        for i in cand:
            key = (Fraction(T[i, -1], T[i, c]), basis[i - 1])
            if best is None or key < best[0]:
                best = (key, i)
        r = best[1]
        if best[0][0] == 0:
            degenerate += 1
            bland = bland or degenerate > 50
        else:
            degenerate = 0
            bland = False
        prow = T[r].copy()
        pc = prow[c]
        sg = 1 if pc > 0 else -1
        idx = np.nonzero(T[:, c])[0]
        idx = idx[idx != r]
        if len(idx):
            T[idx] = (sg * pc) * T[idx] - np.outer(sg * T[idx, c], prow)
            apc = abs(pc)
            for i in idx:
                den[i] *= apc
        if sg < 0:
            T[r] = -prow
        den[r] = abs(pc)
        for i in list(idx) + [r]:
            if den[i] > REDUCE_ABOVE:
                g = math.gcd(int(np.gcd.reduce(T[i])), den[i])
                if g > 1:
                    T[i] //= g
                    den[i] //= g
        basis[r - 1] = c
        pivots += 1
        if pivots % 500 == 0:
            log.debug("phase 1: %d pivots, objective %s", pivots, Fraction(-T[0, -1], den[0]))
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded(f"time budget exhausted after {pivots} pivots")

    log.debug("phase 1 finished after %d pivots", pivots)
    value = Fraction(-T[0, -1], den[0])
    if value == 0:
        x = {v: Fraction(0) for v in used}
        for i, b in enumerate(basis):
            if b < 2 * k:
                val = Fraction(T[i + 1, -1], den[i + 1])
                v = used[b % k]
                x[v] += val if b < k else -val
        return "feasible", x
    # reduced cost of artificial i is 1 - pi_i
    pi = [1 - Fraction(T[0, art0 + i], den[0]) for i in range(m)]
    return "infeasible", [sign[i] * scale[i] * pi[i] for i in range(m)]


# -- solver driver ----------------------------------------------------------

def _subsystem_result(system: LinearSystem, rows: list[int], deadline):
    """Solve the rows ``rows`` of ``system`` exactly.

    Single-variable equalities are substituted out first; the certificate of
    the reduced problem is mapped back by charging each substituted
    equality with the coefficient it removed.
    """
    ne = len(system.equalities)
    all_rows = system.rows
    fixed: dict[int, tuple[Fraction, int, Fraction]] = {}   # v -> (value, row, coeff)
    y = [Fraction(0)] * len(all_rows)
    for i in rows:
        row = all_rows[i]
        if i < ne and len(row.coeffs) == 1:
            (v, c), = row.coeffs
            val = row.rhs / c
            if v not in fixed:
                fixed[v] = (val, i, c)
            elif fixed[v][0] != val:
                j, cj = fixed[v][1], fixed[v][2]
                s = 1 if val > fixed[v][0] else -1
                y[i], y[j] = s / c, -s / cj
                return "infeasible", y

    def charge(i: int, weight: Fraction) -> None:
        y[i] += weight
        for v, a in all_rows[i].coeffs:
            if v in fixed:
                _, j, cj = fixed[v]
                y[j] -= weight * a / cj

    reduced: list[tuple[int, Row]] = []
    for i in rows:
        row = all_rows[i]
        if i < ne and len(row.coeffs) == 1 and fixed[row.coeffs[0][0]][1] == i:
            continue
        rhs = row.rhs - sum((a * fixed[v][0] for v, a in row.coeffs if v in fixed), Fraction(0))
        coeffs = tuple((v, a) for v, a in row.coeffs if v not in fixed)
        if not coeffs:
            if (i < ne and rhs != 0) or (i >= ne and rhs > 0):
                charge(i, Fraction(1 if rhs > 0 else -1))
                return "infeasible", y
            continue
        reduced.append((i, Row(coeffs, rhs)))

    eq_part = [(i, r) for i, r in reduced if i < ne]
    in_part = [(i, r) for i, r in reduced if i >= ne]
    status, payload = _phase1([r for _, r in eq_part], [r for _, r in in_part], deadline)
    if status == "feasible":
        payload.update({v: val for v, (val, _, _) in fixed.items()})
        return status, payload
    for (i, _), weight in zip(eq_part + in_part, payload):
        if weight:
            charge(i, weight)
    return status, y


def _sparse_solve(eqs: list[tuple[dict[int, Fraction], Fraction]]) -> dict[int, Fraction] | None:
    """Exact solution of sparse linear equations, free unknowns set to 0.

    Eliminates shortest row first, pivoting on its least used column.
    Returns None when the equations are inconsistent.
    """
    eqs = [(dict(d), Fraction(r)) for d, r in eqs]
    users: dict[int, set[int]] = {}
    for k, (d, _) in enumerate(eqs):
        for c in d:
            users.setdefault(c, set()).add(k)
    alive = set(range(len(eqs)))
    order = []
    while alive:
        k = min(alive, key=lambda j: len(eqs[j][0]))
        alive.discard(k)
        d, r = eqs[k]
        if not d:
            if r != 0:
                return None
            continue
        c = min(d, key=lambda cc: len(users[cc]))
        for cc in d:
            users[cc].discard(k)
        for j in list(users[c]):
            dj, rj = eqs[j]
            factor = dj[c] / d[c]
            for cc, a in d.items():
                v = dj.get(cc, 0) - factor * a
                if v:
                    if cc not in dj:
                        users[cc].add(j)
                    dj[cc] = v
                elif cc in dj:
                    del dj[cc]
                    users[cc].discard(j)
            eqs[j] = (dj, rj - factor * r)
        order.append((c, d, r))
    x: dict[int, Fraction] = {}
    for c, d, r in reversed(order):
        x[c] = (r - sum((a * x.get(cc, 0) for cc, a in d.items() if cc != c), Fraction(0))) / d[c]
    return x


def _farkas_on(system: LinearSystem, support: Sequence[int]) -> FarkasCertificate | None:
    """Solve ``y.A = 0, y.b = 1`` exactly on the rows ``support``.

    This finds the certificate when ``support`` is the set of rows active at a
    vertex of the float dual; the result is returned only if it verifies.
    """
    rows = system.rows
    cols: dict[int, dict[int, Fraction]] = {}
    for k, i in enumerate(support):
        for v, a in rows[i].coeffs:
            cols.setdefault(v, {})[k] = a
    eqs = [(d, Fraction(0)) for d in cols.values()]
    eqs.append(({k: rows[i].rhs for k, i in enumerate(support) if rows[i].rhs}, Fraction(1)))
    x = _sparse_solve(eqs)
    if x is None:
        return None
    y = [Fraction(0)] * len(rows)
    for k, i in enumerate(support):
        y[i] = x.get(k, Fraction(0))
    cert = FarkasCertificate(tuple(y))
    return cert if verify_certificate(system, cert) else None


def _float_matrix(system: LinearSystem, rows: Sequence[int]):
    from scipy.sparse import coo_matrix
    all_rows = system.rows
    r_i, c_i, vals = [], [], []
    for k, i in enumerate(rows):
        for v, c in all_rows[i].coeffs:
            r_i.append(k)
            c_i.append(v)
            vals.append(float(c))
    A = coo_matrix((vals, (r_i, c_i)), shape=(len(rows), system.n_vars)).tocsr()
    b = np.array([float(all_rows[i].rhs) for i in rows])
    return A, b


def _elastic(system: LinearSystem, rows: Sequence[int], method: str):
    """Float LP ``min w`` over ``A_eq x = b_eq, A_in x + w >= b_in, w >= 0``.

    Returns ``(w, x, y)`` with ``y`` the row multipliers (one per entry of
    ``rows``), or None if the solver fails.
    """
    from scipy.optimize import linprog
    from scipy.sparse import csr_matrix, hstack
    ne = len(system.equalities)
    eq = [i for i in rows if i < ne]
    ineq = [i for i in rows if i >= ne]
    n = system.n_vars
    cost = np.zeros(n + 1)
    cost[-1] = 1.0
    kw = {}
    if ineq:
        A, b = _float_matrix(system, ineq)
        kw.update(A_ub=hstack([-A, -np.ones((len(ineq), 1))]).tocsr(), b_ub=-b)
    if eq:
        A, b = _float_matrix(system, eq)
        kw.update(A_eq=hstack([A, csr_matrix((len(eq), 1))]).tocsr(), b_eq=b)
    res = linprog(cost, bounds=[(None, None)] * n + [(0, None)], method=method, **kw)
    if res.status != 0:
        return None
    y_eq = res.eqlin.marginals if eq else np.zeros(0)
    y_in = -res.ineqlin.marginals if ineq else np.zeros(0)
    y = dict(zip(eq, y_eq))
    y.update(zip(ineq, y_in))
    return res.fun, res.x[:n], [y[i] for i in rows]


def _float_hint(system: LinearSystem, tol: float = 1e-9):
    """Float solve used only to propose a point or a set of certificate rows.

    Returns ``("feasible", x)``, ``("infeasible", rows)`` or None.
    """
    if importlib.util.find_spec("scipy") is None:  # pragma: no cover
        return None
    everything = list(range(len(system.rows)))
    out = _elastic(system, everything, "highs-ipm")
    if out is None:
        return None
    w, x, y = out
    if w <= tol:
        return "feasible", x
    support = [i for i, v in zip(everything, y) if abs(v) > tol]
    # a simplex vertex on the support has few active rows and a unique certificate
    out = _elastic(system, support, "highs-ds")
    if out is not None and out[0] > tol:
        support = [i for i, v in zip(support, out[2]) if abs(v) > tol]
    return "infeasible", support


def _rationalize(xs) -> tuple[Fraction, ...]:
    return tuple(Fraction(float(v)).limit_denominator(1000) for v in xs)


def solve_feasibility(system: LinearSystem, *, budget_seconds: float | None = None,
                      exact_row_limit: int = EXACT_ROW_LIMIT, batch: int = 400):
    """Decide feasibility of ``system`` exactly.

    Returns :class:`Feasible` with a rational point satisfying every row, or
    :class:`Infeasible` with a certificate accepted by :func:`verify_certificate`.
    Raises :class:`BudgetExceeded` when ``budget_seconds`` runs out.
    """
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    rows = system.rows
    if len(rows) <= exact_row_limit:
        working = list(range(len(rows)))
        guess = None
    else:
        hint = _float_hint(system)
        guess = None
        working = list(range(len(system.equalities)))
        if hint is not None and hint[0] == "feasible":
            guess = _rationalize(hint[1])
            if not system.violations(guess):
                log.info("float point rationalizes to an exact solution")
                return Feasible(guess)
        elif hint is not None:
            log.info("float certificate support: %d rows", len(hint[1]))
            cert = _farkas_on(system, hint[1])
            if cert is not None:
                log.info("certificate solved exactly on the float support")
                return Infeasible(cert)
            working = sorted(set(working) | set(hint[1]))
    while True:
        log.info("exact phase 1 on %d of %d rows", len(working), len(rows))
        status, payload = _subsystem_result(system, working, deadline)
        if status == "infeasible":
            cert = FarkasCertificate(tuple(payload))
            assert verify_certificate(system, cert)
            return Infeasible(cert)
        base = guess if guess is not None else (Fraction(0),) * system.n_vars
        x = tuple(payload.get(v, base[v]) for v in range(system.n_vars))
        bad = system.violations(x)
        if not bad:
            return Feasible(x)
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded("time budget exhausted during row generation")
        current = set(working)
        new = [i for i in bad if i not in current][:batch]
        assert new, "exact subsystem point violates one of its own rows"
        working = sorted(current | set(new))


# -- constraint builders ----------------------------------------------------

def elemental_rows(n: int, var) -> list[Row]:
    """``h(y:z|X) >= 0`` for all ``X`` and ``y, z`` outside ``X`` (``y == z`` allowed).

    ``var(mask)`` returns either a variable index or a constant; constants are
    moved to the right-hand side.
    """
    out = []
    for y in range(n):
        for z in range(y, n):
            by, bz = 1 << y, 1 << z
            for X in range(1 << n):
                if X & (by | bz):
                    continue
                coeffs: dict[int, Fraction] = {}
                const = Fraction(0)
                for mask, sgn in ((X | by, 1), (X | bz, 1), (X | by | bz, -1), (X, -1)):
                    t = var(mask)
                    if isinstance(t, int):
                        coeffs[t] = coeffs.get(t, 0) + sgn
                    else:
                        const += sgn * t
                out.append(Row.make(coeffs, -const))
    return out


def build_tensor_feasibility_system(f: SetFunction) -> LinearSystem:
    """Rows whose solutions are exactly the tensor products of ``f`` with U(2,3).

    Variables are ``g(S)`` for every subset ``S`` of ``E x {1,2,3}``, indexed
    by mask.
    """
    n = f.ground.n
    if n > TENSOR_MAX_N:
        raise ValueError(f"tensor feasibility system needs n <= {TENSOR_MAX_N}, got n = {n}")
    pg = ProductGround(f.ground)
    N = 3 * n
    u = u23()
    eqs = {0: Row.make({0: 1}, 0)}
    for X in range(1 << n):
        for Y in range(8):
            mask = product_mask(X, Y, n, 3)
            row = Row.make({mask: 1}, f(X) * u(Y))
            if mask in eqs and eqs[mask] != row:
                raise AssertionError("inconsistent product equalities")
            eqs.setdefault(mask, row)
    ineqs = elemental_rows(N, lambda m: m)
    names = tuple(",".join(pg.ground.labels_of(m)) for m in range(1 << N))
    return LinearSystem(1 << N, tuple(eqs[k] for k in sorted(eqs)), tuple(ineqs), names)


def point_table(f: SetFunction, point: Sequence[Fraction]) -> SetFunction:
    """Product rank table from a solution of the tensor feasibility system."""
    return SetFunction(ProductGround(f.ground).ground, tuple(point))


def build_ci_extension_system(f: SetFunction, X: int, Y: int) -> LinearSystem:
    """Rows for ``h(A) = f(Az)``, ``A`` ranging over subsets of ``E``."""
    n = f.ground.n
    zbit = 1 << n

    def var(mask):
        return mask & ~zbit if mask & zbit else f(mask)

    ineqs = [r for r in elemental_rows(n + 1, var) if r.coeffs]
    eqs = (Row.make({0: 1}, conditional(f, X, Y, 0)),
           Row.make({X: 1}, f(X)),
           Row.make({Y: 1}, f(Y)))
    names = tuple(",".join(f.ground.labels_of(A) + ["z"]) for A in range(1 << n))
    return LinearSystem(1 << n, eqs, tuple(ineqs), names)


CI_LP_MAX_N = 8


def ci_extension_lp(f: SetFunction, X: int, Y: int, z: str | None = None, **solve_kw):
    """Search for a common information extension of ``f`` for ``(X, Y)``.

    Returns :class:`Feasible` (with the extension table as ``witness``) or
    :class:`Infeasible`.  ``f`` must be a polymatroid.
    """
    from .ci import extension_ground
    n = f.ground.n
    if n > CI_LP_MAX_N:
        raise ValueError(f"CI extension LP needs n <= {CI_LP_MAX_N}, got n = {n}")
    verdict = check_polymatroid(f)
    if not verdict.is_polymatroid:
        raise ValueError(f"not a polymatroid: {verdict.reason}")
    system = build_ci_extension_system(f, X, Y)
    result = solve_feasibility(system, **solve_kw)
    if not result.feasible:
        return result
    ground = extension_ground(f.ground, z)
    values = f.values + tuple(result.point)
    return Feasible(result.point, SetFunction(ground, values))
