"""Exact linear feasibility and optimization over the rationals.

Systems are conjunctions of affine equalities ``a . x = b`` and inequalities
``a . x <= b`` with Fraction data.  The solver is a dense two-phase simplex
with Bland's rule (guaranteed termination); degenerate, redundant and
implicitly-equal constraints are all fine.  Before any simplex call the
equalities are Gauss-reduced and substituted into the inequalities, which
settles many systems outright and keeps the tableaus small.

No floats anywhere: every witness returned satisfies its system exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .rationals import as_fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)

Row = tuple[tuple[Fraction, ...], Fraction]


def _coerce_row(n: int, coeffs, rhs) -> Row:
    cs = tuple(as_fraction(c) for c in coeffs)
    if len(cs) != n:
        raise DimensionMismatch(f"constraint has {len(cs)} coefficients, expected {n}")
    return cs, as_fraction(rhs)


@dataclass(frozen=True)
class LinearSystem:
    """``equalities`` hold with ``=``, ``inequalities`` with ``<=``."""

    n: int
    equalities: tuple[Row, ...]
    inequalities: tuple[Row, ...]

    def merged_with(self, other: "LinearSystem") -> "LinearSystem":
        if self.n != other.n:
            raise DimensionMismatch("systems live in different dimensions")
        return LinearSystem(
            self.n,
            self.equalities + other.equalities,
            self.inequalities + other.inequalities,
        )

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.n:
            raise DimensionMismatch("point has wrong length")
        for coeffs, rhs in self.equalities:
            if sum(c * v for c, v in zip(coeffs, x) if c) != rhs:
                return False
        for coeffs, rhs in self.inequalities:
            if sum(c * v for c, v in zip(coeffs, x) if c) > rhs:
                return False
        return True


def linear_system(n: int, equalities: Iterable = (), inequalities: Iterable = ()) -> LinearSystem:
    eqs = tuple(_coerce_row(n, c, r) for c, r in equalities)
    ineqs = tuple(_coerce_row(n, c, r) for c, r in inequalities)
    return LinearSystem(n, eqs, ineqs)


@dataclass(frozen=True)
class LpResult:
    status: str  # "feasible" | "infeasible" | "unbounded"
    witness: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None


INFEASIBLE = LpResult("infeasible")


# ---------------------------------------------------------------------------
# Gaussian presolve


class _Presolve:
    """Row-reduced equalities with inequalities rewritten over the free columns."""

    __slots__ = ("ok", "n", "rref", "pivots", "free", "rows", "consts")

    def __init__(self, n: int, equalities: Iterable[Row], inequalities: Iterable[Row]):
        self.n = n
        self.rref: list[tuple[int, list[Fraction], Fraction]] = []
        self.ok = True
        for coeffs, rhs in equalities:
            if not self._add_equality(list(coeffs), rhs):
                self.ok = False
                return
        self.pivots = [p for p, _, _ in self.rref]
        pivot_set = set(self.pivots)
        self.free = [j for j in range(n) if j not in pivot_set]
        # rows: non-constant reduced inequalities (orig index, coeffs, rhs)
        # consts: inequalities that reduced to "0 <= rhs" (orig index, rhs)
        self.rows: list[tuple[int, list[Fraction], Fraction]] = []
        self.consts: list[tuple[int, Fraction]] = []
        for idx, (coeffs, rhs) in enumerate(inequalities):
            red, r = self._reduce(list(coeffs), rhs)
            if any(red):
                self.rows.append((idx, red, r))
            else:
                if r < 0:
                    self.ok = False
                    return
                self.consts.append((idx, r))

    def _reduce(self, coeffs: list[Fraction], rhs: Fraction):
        for p, prow, prhs in self.rref:
            c = coeffs[p]
            if c:
                for j in range(self.n):
                    if prow[j]:
                        coeffs[j] -= c * prow[j]
                rhs -= c * prhs
        return coeffs, rhs

    def _add_equality(self, coeffs: list[Fraction], rhs: Fraction) -> bool:
        coeffs, rhs = self._reduce(coeffs, rhs)
        pivot = next((j for j in range(self.n) if coeffs[j]), None)
        if pivot is None:
            return rhs == 0
        inv = coeffs[pivot]
        coeffs = [c / inv for c in coeffs]
        rhs = rhs / inv
        for k, (p, prow, prhs) in enumerate(self.rref):
            c = prow[pivot]
            if c:
                newrow = [a - c * b for a, b in zip(prow, coeffs)]
                self.rref[k] = (p, newrow, prhs - c * rhs)
        self.rref.append((pivot, coeffs, rhs))
        self.rref.sort(key=lambda t: t[0])
        return True

    @property
    def rank(self) -> int:
        return len(self.rref)

    def lift(self, free_values: Sequence[Fraction]) -> tuple[Fraction, ...]:
        x = [_ZERO] * self.n
        for j, v in zip(self.free, free_values):
            x[j] = v
        for p, prow, prhs in self.rref:
            v = prhs
            for j in self.free:
                if prow[j]:
                    v -= prow[j] * x[j]
            x[p] = v
        return tuple(x)

    def compress(self, coeffs: Sequence[Fraction]) -> list[Fraction]:
        return [coeffs[j] for j in self.free]


# ---------------------------------------------------------------------------
# simplex core (standard form, Bland's rule)


def _pivot(T: list[list[Fraction]], red: list[Fraction], basis: list[int], r: int, c: int):
    row = T[r]
    inv = row[c]
    if inv != 1:
        T[r] = row = [v / inv for v in row]
    for i, other in enumerate(T):
        if i != r and other[c]:
            f = other[c]
            T[i] = [a - f * b for a, b in zip(other, row)]
    f = red[c]
    if f:
        for j in range(len(red)):
            if row[j]:
                red[j] -= f * row[j]
    basis[r] = c


def _run_simplex(T: list[list[Fraction]], basis: list[int], cost: list[Fraction]) -> str:
    """Minimize ``cost . y`` over the tableau; mutates T/basis to optimality."""
    m = len(T)
    W = len(cost)
    red = list(cost) + [_ZERO]
    for i, bi in enumerate(basis):
        cb = cost[bi]
        if cb:
            row = T[i]
            for j in range(W + 1):
                if row[j]:
                    red[j] -= cb * row[j]
    while True:
        enter = -1
        for j in range(W):
            if red[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave = -1
        best: Fraction | None = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][W] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(T, red, basis, leave, enter)


def _objective_value(T, basis, cost) -> Fraction:
    W = len(cost)
    return sum(cost[basis[i]] * T[i][W] for i in range(len(T)) if cost[basis[i]])


def _solve_standard(A: list[list[Fraction]], b: list[Fraction], cost: list[Fraction]):
    """minimize cost.y  s.t.  A y = b, y >= 0.  Returns (status, y)."""
    m = len(A)
    W = len(cost)
    T = []
    for i in range(m):
        row = list(A[i]) + [_ZERO] * m + [b[i]]
        if row[-1] < 0:
            row = [-v for v in row]
        row[W + i] = _ONE
        T.append(row)
    basis = [W + i for i in range(m)]
    phase1 = [_ZERO] * W + [_ONE] * m
    _run_simplex(T, basis, phase1)
    if _objective_value(T, basis, phase1) != 0:
        return "infeasible", None
    # drive artificial variables out of the basis
    drop: list[int] = []
    for i in range(m):
        if basis[i] >= W:
            col = next((j for j in range(W) if T[i][j]), None)
            if col is None:
                drop.append(i)
            else:
                _pivot(T, [_ZERO] * (W + m + 1), basis, i, col)
    if drop:
        dead = set(drop)
        T = [row for i, row in enumerate(T) if i not in dead]
        basis = [bv for i, bv in enumerate(basis) if i not in dead]
    # strip artificial columns
    T = [row[:W] + [row[-1]] for row in T]
    status = _run_simplex(T, basis, cost)
    if status == "unbounded":
        return "unbounded", None
    y = [_ZERO] * W
    for i, bv in enumerate(basis):
        y[bv] = T[i][W]
    return "optimal", y


def _solve_rows(
    rows: list[tuple[list[Fraction], Fraction]],
    nvars: int,
    objective: list[Fraction] | None = None,
    maximize: bool = False,
):
    """Solve over free-signed variables with ``coeffs . x <= rhs`` rows.

    Returns (status, x, value).  With no objective this is a pure feasibility
    check (value None).
    """
    if not rows:
        if objective is None or not any(objective):
            return "optimal", [_ZERO] * nvars, _ZERO
        return "unbounded", None, None
    W = 2 * nvars + len(rows)
    A = []
    b = []
    for k, (coeffs, rhs) in enumerate(rows):
        arow = [_ZERO] * W
        for j in range(nvars):
            c = coeffs[j]
            if c:
                arow[j] = c
                arow[nvars + j] = -c
        arow[2 * nvars + k] = _ONE
        A.append(arow)
        b.append(rhs)
    cost = [_ZERO] * W
    if objective is not None:
        for j in range(nvars):
            o = objective[j]
            if o:
                if maximize:
                    cost[j] = -o
                    cost[nvars + j] = o
                else:
                    cost[j] = o
                    cost[nvars + j] = -o
    status, y = _solve_standard(A, b, cost)
    if status != "optimal":
        return status, None, None
    x = [y[j] - y[nvars + j] for j in range(nvars)]
    value = None
    if objective is not None:
        value = sum(o * v for o, v in zip(objective, x))
    return "optimal", x, value


# ---------------------------------------------------------------------------
# public operations


def feasible(sys: LinearSystem) -> LpResult:
    """Decide feasibility; on success the witness satisfies ``sys`` exactly."""
    pres = _Presolve(sys.n, sys.equalities, sys.inequalities)
    if not pres.ok:
        return INFEASIBLE
    if not pres.rows:
        return LpResult("feasible", pres.lift([_ZERO] * len(pres.free)))
    rows = [(pres.compress(coeffs), rhs) for _, coeffs, rhs in pres.rows]
    status, x, _ = _solve_rows(rows, len(pres.free))
    if status != "optimal":
        return INFEASIBLE
    return LpResult("feasible", pres.lift(x))


def maximize_margin(sys: LinearSystem, strict: Iterable[int]) -> LpResult:
    """Maximize the slack ``s`` (capped at 1) of the selected inequalities.

    Every selected inequality is tightened to ``a . x <= b - s`` while the
    rest stay as they are.  A positive objective certifies that the selected
    inequalities can hold strictly at once; the witness attains it.
    """
    strict = set(strict)
    bad = [i for i in strict if not 0 <= i < len(sys.inequalities)]
    if bad:
        raise IndexError(f"inequality index {bad[0]} out of range")
    pres = _Presolve(sys.n, sys.equalities, sys.inequalities)
    if not pres.ok:
        return INFEASIBLE
    nf = len(pres.free)
    rows: list[tuple[list[Fraction], Fraction]] = []
    for idx, coeffs, rhs in pres.rows:
        row = pres.compress(coeffs)
        row.append(_ONE if idx in strict else _ZERO)
        rows.append((row, rhs))
    for idx, rhs in pres.consts:
        if idx in strict:
            rows.append(([_ZERO] * nf + [_ONE], rhs))
    rows.append(([_ZERO] * nf + [_ONE], _ONE))   # s <= 1
    rows.append(([_ZERO] * nf + [-_ONE], _ZERO))  # s >= 0
    objective = [_ZERO] * nf + [_ONE]
    status, x, value = _solve_rows(rows, nf + 1, objective, maximize=True)
    if status != "optimal":
        return INFEASIBLE
    return LpResult("feasible", pres.lift(x[:nf]), value)


def optimize(sys: LinearSystem, objective: Sequence, maximize: bool = False) -> LpResult:
    """Optimize a linear objective over the system (may be unbounded)."""
    obj = [as_fraction(c) for c in objective]
    if len(obj) != sys.n:
        raise DimensionMismatch("objective has wrong length")
    pres = _Presolve(sys.n, sys.equalities, sys.inequalities)
    if not pres.ok:
        return INFEASIBLE
    # substitute the pivot variables out of the objective
    red_obj = list(obj)
    const = _ZERO
    for p, prow, prhs in pres.rref:
        c = red_obj[p]
        if c:
            const += c * prhs
            for j in range(sys.n):
                if prow[j] and j != p:
                    red_obj[j] -= c * prow[j]
            red_obj[p] = _ZERO
    cobj = pres.compress(red_obj)
    rows = [(pres.compress(coeffs), rhs) for _, coeffs, rhs in pres.rows]
    status, x, value = _solve_rows(rows, len(pres.free), cobj, maximize=maximize)
    if status == "infeasible":
        return INFEASIBLE
    if status == "unbounded":
        return LpResult("unbounded")
    return LpResult("feasible", pres.lift(x), value + const)


@dataclass(frozen=True)
class InteriorPoint:
    status: str
    witness: tuple[Fraction, ...] | None
    dimension: int
    tight: frozenset[int]  # inequality indices that hold with equality everywhere


def relative_interior(sys: LinearSystem) -> InteriorPoint:
    """A point in the relative interior, the affine dimension, and the set of
    inequalities that are implicitly equalities on the whole solution set."""
    eqs = list(sys.equalities)
    while True:
        pres = _Presolve(sys.n, eqs, sys.inequalities)
        if not pres.ok:
            return InteriorPoint("infeasible", None, -1, frozenset())
        tight = frozenset(idx for idx, rhs in pres.consts if rhs == 0)
        if not pres.rows:
            return InteriorPoint(
                "feasible", pres.lift([_ZERO] * len(pres.free)), sys.n - pres.rank, tight
            )
        live = [idx for idx, _, _ in pres.rows]
        res = maximize_margin(LinearSystem(sys.n, tuple(eqs), sys.inequalities), live)
        if res.status == "infeasible":
            return InteriorPoint("infeasible", None, -1, frozenset())
        if res.objective > 0:
            return InteriorPoint("feasible", res.witness, sys.n - pres.rank, tight)
        # some live inequality is forced tight; find one and recurse
        forced: list[int] = []
        w = res.witness
        base = LinearSystem(sys.n, tuple(eqs), sys.inequalities)
        for idx in live:
            coeffs, rhs = sys.inequalities[idx]
            if sum(c * v for c, v in zip(coeffs, w) if c) != rhs:
                continue  # strict somewhere, hence not forced
            single = maximize_margin(base, [idx])
            if single.objective == 0:
                forced.append(idx)
        if not forced:
            raise AssertionError("zero joint margin but no forced-tight inequality")
        for idx in forced:
            coeffs, rhs = sys.inequalities[idx]
            eqs.append((coeffs, rhs))


def affine_dimension(sys: LinearSystem) -> int:
    """Dimension of the affine hull of the solution set (-1 when empty)."""
    return relative_interior(sys).dimension
