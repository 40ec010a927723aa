"""Cells of a finite intersection of min-plus hypersurfaces.

Fixing, for every polynomial, an unordered pair of support exponents that are
required to attain the minimum together yields a closed convex polyhedron
(one equality plus the "these two are minimal" inequalities per polynomial).
The union of these cells over all feasible pair choices is exactly the
intersection of the hypersurfaces.

Enumeration is a depth-first search over the pair choices with exact pruning:
accumulated equalities live in a row-reduced form; a branch dies as soon as
its constraints are inconsistent (detected by substitution when everything
relevant is pinned, otherwise by an exact LP feasibility check).  Searching
one polynomial at a time in a most-constrained-first order keeps the tree
close to the number of genuinely distinct cells.

The search effort is capped: exceeding ``cap`` branch steps raises
``CapExceeded`` instead of truncating the answer or hanging.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .errors import CapExceeded, DimensionMismatch
from .linsolve import LinearSystem, _solve_rows, linear_system, relative_interior
from .polynomials import Exponent, Point, TropicalPolynomial

DEFAULT_CAP = 10_000_000

_ZERO = Fraction(0)

Pair = tuple[Exponent, Exponent]


@dataclass(frozen=True)
class Cell:
    """One feasible pair choice, its polyhedron, and a relative-interior point.

    ``choice[i]`` is the exponent pair selected for the i-th input polynomial.
    ``pins`` records coordinates whose value is forced by the cell equalities
    (``None`` where the coordinate is not forced); it is derived data kept for
    fast disjointness tests.
    """

    choice: tuple[Pair, ...]
    system: LinearSystem
    witness: Point
    dimension: int
    pins: tuple[Fraction | None, ...]

    def __post_init__(self):
        if not self.system.satisfied_by(self.witness):
            raise AssertionError("cell witness does not satisfy the cell system")


def pair_constraints(f: TropicalPolynomial, beta: Exponent, gamma: Exponent):
    """Constraint rows forcing terms ``beta`` and ``gamma`` to attain the minimum."""
    cb = f.coefficient(beta)
    cg = f.coefficient(gamma)
    eq = (tuple(Fraction(b - g) for b, g in zip(beta, gamma)), cg - cb)
    ineqs = []
    for m in f.monomials:
        alpha = m.exponent
        if alpha == beta or alpha == gamma:
            continue
        ineqs.append((tuple(Fraction(b - a) for b, a in zip(beta, alpha)), m.coefficient - cb))
    return eq, ineqs


def cell_system(fs: Sequence[TropicalPolynomial], choice: Sequence[Pair]) -> LinearSystem:
    """The conjunction of the pair constraints over all polynomials."""
    if len(fs) != len(choice):
        raise ValueError("one pair per polynomial required")
    n = fs[0].dimension
    eqs = []
    ineqs = []
    for f, (beta, gamma) in zip(fs, choice):
        eq, ins = pair_constraints(f, beta, gamma)
        eqs.append(eq)
        ineqs.extend(ins)
    return linear_system(n, eqs, ineqs)


def _check_common_dimension(fs: Sequence[TropicalPolynomial]) -> int:
    n = fs[0].dimension
    for f in fs:
        if f.dimension != n:
            raise DimensionMismatch("polynomials live in different dimensions")
    return n


# ---------------------------------------------------------------------------
# the search


class _RowBasis:
    """Immutable row-reduced equality basis with substitution helpers."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: tuple = ()):
        self.n = n
        self.rows = rows  # tuples (pivot, coeffs tuple, rhs), fully reduced

    def reduce(self, coeffs: list[Fraction], rhs: Fraction):
        for p, prow, prhs in self.rows:
            c = coeffs[p]
            if c:
                for j in range(self.n):
                    if prow[j]:
                        coeffs[j] -= c * prow[j]
                rhs -= c * prhs
        return coeffs, rhs

    def added(self, coeffs: Sequence[Fraction], rhs: Fraction):
        """Returns (new basis, True) on a new pivot, (self, True) on a redundant
        row, (None, False) on inconsistency."""
        cs, r = self.reduce([Fraction(c) for c in coeffs], Fraction(rhs))
        pivot = next((j for j in range(self.n) if cs[j]), None)
        if pivot is None:
            return (self if r == 0 else None), False
        inv = cs[pivot]
        cs = tuple(c / inv for c in cs)
        r = r / inv
        rows = []
        for p, prow, prhs in self.rows:
            c = prow[pivot]
            if c:
                rows.append((p, tuple(a - c * b for a, b in zip(prow, cs)), prhs - c * r))
            else:
                rows.append((p, prow, prhs))
        rows.append((pivot, cs, r))
        rows.sort(key=lambda t: t[0])
        return _RowBasis(self.n, tuple(rows)), True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pins(self) -> dict[int, Fraction]:
        out = {}
        for p, prow, prhs in self.rows:
            if sum(1 for c in prow if c) == 1:
                out[p] = prhs
        return out


class _CellSearch:
    def __init__(self, fs: Sequence[TropicalPolynomial], cap: int, cover: bool):
        self.fs = list(fs)
        self.n = _check_common_dimension(fs)
        self.cap = cap
        self.cover = cover
        self.steps = 0
        self.pairs: list[list[Pair]] = []
        self.variables: list[frozenset[int]] = []
        for f in self.fs:
            supp = sorted(f.support)
            self.pairs.append([tuple(sorted(p)) for p in combinations(supp, 2)])
            used = frozenset(j for e in supp for j in range(self.n) if e[j])
            self.variables.append(used)

    def _tick(self):
        self.steps += 1
        if self.steps > self.cap:
            raise CapExceeded(self.cap, self.steps)

    def run(self) -> Iterator[Cell]:
        if any(len(f.monomials) < 2 for f in self.fs):
            return iter(())
        basis = _RowBasis(self.n)
        return self._dfs(basis, (), {}, list(range(len(self.fs))))

    # -- helpers ----------------------------------------------------------

    def _select(self, basis: _RowBasis, remaining: list[int]) -> int:
        pins = basis.pins()
        best = None
        best_key = None
        for idx in remaining:
            unpinned = sum(1 for v in self.variables[idx] if v not in pins)
            key = (unpinned, idx)
            if best_key is None or key < best_key:
                best, best_key = idx, key
        return best

    def _eval_point(self, pins: dict[int, Fraction]) -> Point:
        return tuple(pins.get(j, _ZERO) for j in range(self.n))

    def _argmin_pairs(self, idx: int, pins: dict[int, Fraction]) -> list[Pair]:
        """Feasible pairs of a polynomial all of whose variables are pinned."""
        x = self._eval_point(pins)
        _, argmin = self.fs[idx].evaluate(x)
        if len(argmin) < 2:
            return []
        exps = sorted(argmin)
        return [tuple(sorted(p)) for p in combinations(exps, 2)]

    def _emit(self, chosen: dict[int, Pair], basis: _RowBasis) -> Cell:
        choice = tuple(chosen[i] for i in range(len(self.fs)))
        system = cell_system(self.fs, choice)
        pins_map = basis.pins()
        if basis.rank == self.n:
            witness = self._eval_point(pins_map)
            dim = 0
        else:
            ip = relative_interior(system)
            if ip.status != "feasible":
                raise AssertionError("search reached an infeasible leaf")
            witness, dim = ip.witness, ip.dimension
        if dim == 0:
            pins = tuple(witness)
        else:
            pins = tuple(pins_map.get(j) for j in range(self.n))
        return Cell(choice, system, witness, dim, pins)

    # -- depth-first enumeration ------------------------------------------

    def _dfs(self, basis: _RowBasis, store: tuple, chosen: dict[int, Pair],
             remaining: list[int]) -> Iterator[Cell]:
        if not remaining:
            yield self._emit(chosen, basis)
            return
        idx = self._select(basis, remaining)
        rest = [i for i in remaining if i != idx]
        pins = basis.pins()
        f = self.fs[idx]

        if self.variables[idx] <= pins.keys():
            # every variable this polynomial touches is pinned: its feasible
            # pairs are exactly the pairs inside the argmin at the pinned values
            pairs = self._argmin_pairs(idx, pins)
            if self.cover:
                pairs = pairs[:1]
            for pair in pairs:
                self._tick()
                chosen[idx] = pair
                yield from self._dfs(basis, store, chosen, rest)
                del chosen[idx]
            return

        for pair in self.pairs[idx]:
            self._tick()
            beta, gamma = pair
            eq, ineqs = pair_constraints(f, beta, gamma)
            new_basis, new_pivot = basis.added(*eq)
            if new_basis is None:
                continue
            new_rows = []
            violated = False
            for coeffs, rhs in ineqs:
                red, r = new_basis.reduce(list(coeffs), rhs)
                if any(red):
                    new_rows.append((coeffs, rhs))
                elif r < 0:
                    violated = True
                    break
            if violated:
                continue
            new_store = store
            if new_rows or (new_pivot and store):
                # geometry changed: re-reduce the accumulated inequalities and
                # ask the LP whether the branch is still alive
                live = []
                ok = True
                rows = []
                for coeffs, rhs in store + tuple(new_rows):
                    red, r = new_basis.reduce(list(coeffs), rhs)
                    if any(red):
                        live.append((coeffs, rhs))
                        rows.append((red, r))
                    elif r < 0:
                        ok = False
                        break
                if not ok:
                    continue
                if rows:
                    pivots = {p for p, _, _ in new_basis.rows}
                    free = [j for j in range(self.n) if j not in pivots]
                    compressed = [([row[j] for j in free], r) for row, r in rows]
                    status, _, _ = _solve_rows(compressed, len(free))
                    if status != "optimal":
                        continue
                new_store = tuple(live)
            chosen[idx] = pair
            yield from self._dfs(new_basis, new_store, chosen, rest)
            del chosen[idx]


def iter_cells(fs: Sequence[TropicalPolynomial], *, cap: int = DEFAULT_CAP,
               cover: bool = False) -> Iterator[Cell]:
    """Stream feasible cells in search order.

    With ``cover=True``, branches that provably repeat an already-represented
    polyhedron (pair choices of a polynomial whose variables are all pinned)
    are collapsed to one representative; the union of the yielded cells is
    unchanged.  Component counts, witnesses and dimensions are unaffected.
    """
    if not fs:
        raise ValueError("need at least one polynomial")
    return _CellSearch(fs, cap, cover).run()


def enumerate_cells(fs: Sequence[TropicalPolynomial], *, cap: int = DEFAULT_CAP) -> list[Cell]:
    """All feasible cells, sorted lexicographically by their pair choices."""
    cells = list(iter_cells(fs, cap=cap))
    cells.sort(key=lambda c: c.choice)
    return cells


def witness_or_empty(fs: Sequence[TropicalPolynomial], *, cap: int = DEFAULT_CAP) -> Point | None:
    """A point of the intersection, or ``None`` when it is empty."""
    for cell in iter_cells(fs, cap=cap, cover=True):
        return cell.witness
    return None


def cell_dimension(cell: Cell) -> int:
    """Affine dimension of the cell's polyhedron."""
    return cell.dimension


# ---------------------------------------------------------------------------
# regular subdivision of a planar support


@dataclass(frozen=True)
class SubdivisionFace:
    """A face of the subdivision dual to the curve: the support exponents whose
    lifted points lie on a common supporting plane."""

    points: tuple[Exponent, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(sorted(self.points)))

    def __len__(self):
        return len(self.points)

    def as_set(self) -> frozenset[Exponent]:
        return frozenset(self.points)


def _tie_system(f: TropicalPolynomial, tied: Sequence[Exponent]) -> LinearSystem:
    base = tied[0]
    cb = f.coefficient(base)
    eqs = []
    for other in tied[1:]:
        eqs.append((tuple(Fraction(b - o) for b, o in zip(base, other)),
                    f.coefficient(other) - cb))
    ineqs = []
    tied_set = set(tied)
    for m in f.monomials:
        if m.exponent in tied_set:
            continue
        ineqs.append((tuple(Fraction(b - a) for b, a in zip(base, m.exponent)),
                      m.coefficient - cb))
    return linear_system(f.dimension, eqs, ineqs)


def regular_subdivision_2d(f: TropicalPolynomial) -> list[SubdivisionFace]:
    """Maximal faces of the regular subdivision induced by the coefficient lift.

    A subset of the support is a face when some linear functional is minimized
    exactly on its lifted points.  Maximal faces are recovered from the
    argmin sets at relative-interior points of pair and triple tie loci.
    """
    if f.dimension != 2:
        raise DimensionMismatch("regular subdivisions are computed for two variables")
    support = sorted(f.support)
    if len(support) == 1:
        return [SubdivisionFace(tuple(support))]
    faces: set[frozenset[Exponent]] = set()
    for tied in list(combinations(support, 2)) + list(combinations(support, 3)):
        ip = relative_interior(_tie_system(f, tied))
        if ip.status != "feasible":
            continue
        _, argmin = f.evaluate(ip.witness)
        faces.add(argmin)
    maximal = [F for F in faces if not any(F < G for G in faces)]
    out = [SubdivisionFace(tuple(F)) for F in maximal]
    out.sort(key=lambda face: face.points)
    return out
