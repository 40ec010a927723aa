"""Topology of a finite intersection of min-plus hypersurfaces.

The cell enumeration covers the intersection by finitely many closed convex
polyhedra, so its point-set topology reduces to combinatorics: the
intersection is nonempty iff some cell is feasible, its dimension is the
largest cell dimension, and two points lie in the same path-connected
component iff their cells are linked by a chain of pairwise-intersecting
cells.  Adjacency of two closed convex cells is one exact LP feasibility
check on the merged constraints, so component counting is union-find over
the cell intersection graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cells import DEFAULT_CAP, Cell, iter_cells, witness_or_empty
from .errors import DimensionMismatch, EmptyPrevariety
from .linsolve import feasible, optimize
from .polynomials import Point, TropicalPolynomial, iter_points_text
from .rationals import as_fraction

_ZERO = Fraction(0)


@dataclass(frozen=True)
class TopologyReport:
    """Summary of the intersection: emptiness, connected components, dimension,
    and — when the set is finite — the points themselves."""

    nonempty: bool
    component_count: int
    dimension: int
    finite: bool
    points: tuple[Point, ...] | None

    def to_text(self) -> str:
        lines = [
            f"nonempty: {'yes' if self.nonempty else 'no'}",
            f"components: {self.component_count}",
            f"dimension: {self.dimension}",
            f"finite: {'yes' if self.finite else 'no'}",
        ]
        if self.points is not None:
            lines.extend(f"point: {text}" for text in iter_points_text(self.points))
        return "\n".join(lines) + "\n"


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, i: int) -> int:
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, i: int, j: int):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[ri] = rj

    def count(self) -> int:
        return sum(1 for i in range(len(self.parent)) if self.find(i) == i)


def _pins_conflict(a: Cell, b: Cell) -> bool:
    for va, vb in zip(a.pins, b.pins):
        if va is not None and vb is not None and va != vb:
            return True
    return False


def _adjacent(a: Cell, b: Cell) -> bool:
    """Whether the two closed cells share a point."""
    if _pins_conflict(a, b):
        return False
    if a.dimension == 0:
        return b.system.satisfied_by(a.witness)
    if b.dimension == 0:
        return a.system.satisfied_by(b.witness)
    return feasible(a.system.merged_with(b.system)).status == "feasible"


def _deduped_cells(fs: Sequence[TropicalPolynomial], cap: int) -> list[Cell]:
    """Cover of the intersection with syntactic duplicates removed.

    A zero-dimensional cell is its witness, so witness equality is polyhedron
    equality there; higher-dimensional cells are deduplicated by their
    constraint rows.  Removing duplicates changes neither the union nor any
    quantity derived from it.
    """
    seen = set()
    out = []
    for cell in iter_cells(fs, cap=cap, cover=True):
        if cell.dimension == 0:
            key = cell.witness
        else:
            key = (
                tuple(sorted(cell.system.equalities)),
                tuple(sorted(cell.system.inequalities)),
            )
        if key in seen:
            continue
        seen.add(key)
        out.append(cell)
    return out


def _whole_space_report(dim: int | None) -> TopologyReport:
    if dim is None:
        raise ValueError("dim is required when no polynomials are given")
    if dim < 1:
        raise ValueError("dim must be at least 1")
    return TopologyReport(True, 1, dim, False, None)


def analyze(fs: Sequence[TropicalPolynomial], *, dim: int | None = None,
            cap: int = DEFAULT_CAP) -> TopologyReport:
    """Full topological summary of the intersection of the hypersurfaces.

    With no polynomials the intersection is all of ``R^dim`` (``dim`` must
    then be supplied).
    """
    fs = list(fs)
    if not fs:
        return _whole_space_report(dim)
    cells = _deduped_cells(fs, cap)
    if not cells:
        return TopologyReport(False, 0, -1, True, ())
    uf = _UnionFind(len(cells))
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            if uf.find(i) != uf.find(j) and _adjacent(cells[i], cells[j]):
                uf.union(i, j)
    dimension = max(cell.dimension for cell in cells)
    finite = dimension == 0
    points = tuple(sorted({cell.witness for cell in cells})) if finite else None
    return TopologyReport(True, uf.count(), dimension, finite, points)


def intersect_nonempty(fs: Sequence[TropicalPolynomial], *, dim: int | None = None,
                       cap: int = DEFAULT_CAP) -> Point | None:
    """A common point of the hypersurfaces, or ``None`` when they miss each
    other.  Short-circuits at the first feasible cell."""
    fs = list(fs)
    if not fs:
        _whole_space_report(dim)  # validates dim
        return (_ZERO,) * dim
    return witness_or_empty(fs, cap=cap)


def connected_components(fs: Sequence[TropicalPolynomial], *, dim: int | None = None,
                         cap: int = DEFAULT_CAP) -> int:
    """Number of path-connected components of the intersection (0 when empty)."""
    return analyze(fs, dim=dim, cap=cap).component_count


def is_connected(fs: Sequence[TropicalPolynomial], *, dim: int | None = None,
                 cap: int = DEFAULT_CAP) -> bool:
    """Whether the nonempty intersection is connected; raises
    ``EmptyPrevariety`` when it is empty (the question is then void)."""
    report = analyze(fs, dim=dim, cap=cap)
    if not report.nonempty:
        raise EmptyPrevariety("the intersection is empty")
    return report.component_count == 1


def prevariety_dimension(fs: Sequence[TropicalPolynomial], *, dim: int | None = None,
                         cap: int = DEFAULT_CAP) -> int:
    """Largest cell dimension (-1 when the intersection is empty)."""
    fs = list(fs)
    if not fs:
        return _whole_space_report(dim).dimension
    cells = _deduped_cells(fs, cap)
    return max((cell.dimension for cell in cells), default=-1)


def tropical_combination(x: Sequence, y: Sequence, lam, mu) -> Point:
    """Componentwise ``min(lam + x_i, mu + y_i)``."""
    xs = [as_fraction(v) for v in x]
    ys = [as_fraction(v) for v in y]
    if len(xs) != len(ys):
        raise DimensionMismatch("points have different lengths")
    l, m = as_fraction(lam), as_fraction(mu)
    return tuple(min(l + a, m + b) for a, b in zip(xs, ys))


# ---------------------------------------------------------------------------
# containment and maximal cells


def _contains(outer: Cell, inner: Cell) -> bool:
    """Exact test that the inner cell's polyhedron lies inside the outer's."""
    if not outer.system.satisfied_by(inner.witness):
        return False
    if inner.dimension == 0:
        return True  # the inner cell is exactly its witness point
    inner_sys = inner.system
    eq_rows = set(inner_sys.equalities)
    le_rows = set(inner_sys.inequalities) | eq_rows
    for coeffs, rhs in outer.system.equalities:
        if (coeffs, rhs) in eq_rows:
            continue
        for maximize in (False, True):
            res = optimize(inner_sys, coeffs, maximize=maximize)
            if res.status != "feasible" or res.objective != rhs:
                return False
    for coeffs, rhs in outer.system.inequalities:
        if (coeffs, rhs) in le_rows:
            continue
        res = optimize(inner_sys, coeffs, maximize=True)
        if res.status != "feasible" or res.objective > rhs:
            return False
    return True


def maximal_cells(cells: Sequence[Cell]) -> list[Cell]:
    """Drop cells whose polyhedron is contained in another cell's.

    Pair-indexed cells routinely include faces of other cells (a ray together
    with its endpoint, say); the survivors are the inclusion-maximal pieces,
    whose union still equals the union of the input.  Of several cells with
    one and the same polyhedron the first in input order is kept.
    """
    cells = list(cells)
    kept = []
    for i, a in enumerate(cells):
        dominated = False
        for j, b in enumerate(cells):
            if i == j or a.dimension > b.dimension or _pins_conflict(a, b):
                continue
            if _contains(b, a):
                if not _contains(a, b):
                    dominated = True
                    break
                if j < i:  # identical polyhedra: keep the earliest
                    dominated = True
                    break
        if not dominated:
            kept.append(a)
    return kept
