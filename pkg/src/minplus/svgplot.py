"""Deterministic SVG rendering of planar min-plus curves.

Left panel: the curve — one-dimensional cells drawn as exact segments or
rays (rays are clipped at a box 5% larger than the viewport and tipped with
an arrowhead), zero-dimensional cells as vertex dots.  Right panel: the dual
picture — the subdivision of the support induced by the coefficients, drawn
with both axes reversed (first exponent growing to the left, second growing
downward), so curve vertices correspond to subdivision polygons.

All geometry is computed over exact rationals; rounding happens only in the
final coordinate formatting, which is fixed to three decimals so identical
inputs give byte-identical documents.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cells import Cell, enumerate_cells, regular_subdivision_2d
from .errors import DimensionMismatch
from .linsolve import _Presolve, optimize
from .polynomials import TropicalPolynomial

Box = tuple[Fraction, Fraction, Fraction, Fraction]  # xmin, ymin, xmax, ymax

_PANEL = 360  # px
_PAD = 24


def _fmt(value: float) -> str:
    text = f"{value:.3f}"
    return "0.000" if text == "-0.000" else text


class _Panel:
    """Affine map from a rational data box onto a pixel square."""

    def __init__(self, box: Box, x_offset: int):
        self.box = box
        self.x_offset = x_offset
        spans = (box[2] - box[0], box[3] - box[1])
        span = max(spans, default=Fraction(1))
        if span <= 0:
            span = Fraction(1)
        self.scale = Fraction(_PANEL) / span

    def point(self, x: Fraction, y: Fraction) -> tuple[float, float]:
        px = self.x_offset + _PAD + float((x - self.box[0]) * self.scale)
        py = _PAD + float((self.box[3] - y) * self.scale)  # svg y grows downward
        return px, py

    def xy(self, x: Fraction, y: Fraction) -> str:
        px, py = self.point(x, y)
        return f"{_fmt(px)},{_fmt(py)}"


def _line_direction(cell: Cell) -> tuple[Fraction, Fraction]:
    pres = _Presolve(2, cell.system.equalities, ())
    if not pres.ok or pres.rank != 1:
        raise AssertionError("one-dimensional cell must have equality rank 1")
    _, row, _ = pres.rref[0]
    a, b = row[0], row[1]
    return (-b, a)


def _segment_of(cell: Cell):
    """Parameter interval of a 1-dimensional cell along its line.

    Returns (w, d, t0, t1) with endpoints ``w + t*d``; ``None`` for an
    unbounded side.
    """
    w = cell.witness
    d = _line_direction(cell)
    dd = d[0] * d[0] + d[1] * d[1]
    base = d[0] * w[0] + d[1] * w[1]
    lo = optimize(cell.system, d, maximize=False)
    hi = optimize(cell.system, d, maximize=True)
    t0 = None if lo.status == "unbounded" else (lo.objective - base) / dd
    t1 = None if hi.status == "unbounded" else (hi.objective - base) / dd
    return w, d, t0, t1


def curve_geometry(f: TropicalPolynomial):
    """Exact geometry of a plane curve: one ``(witness, direction, t_lo,
    t_hi)`` record per one-dimensional cell (a ``None`` bound marks an
    unbounded end) plus the list of isolated points."""
    if f.dimension != 2:
        raise DimensionMismatch("curve geometry requires a two-variable polynomial")
    segments = []
    isolated = []
    if len(f.monomials) < 2:
        return segments, isolated
    for cell in enumerate_cells([f]):
        if cell.dimension == 1:
            segments.append(_segment_of(cell))
        elif cell.dimension == 0:
            isolated.append(cell.witness)
    return segments, isolated


def curve_vertices(f: TropicalPolynomial) -> list[tuple[Fraction, Fraction]]:
    """Vertices of the curve: finite endpoints of its edges together with any
    isolated cell points, deduplicated and sorted."""
    segments, isolated = curve_geometry(f)
    pts = {(w[0], w[1]) for w in isolated}
    for w, d, t0, t1 in segments:
        for t in (t0, t1):
            if t is not None:
                pts.add((w[0] + t * d[0], w[1] + t * d[1]))
    return sorted(pts)


def _clip(w, d, t0, t1, box: Box):
    """Intersect the parametric piece with the box; flags tell whether each
    end was cut by the box (and so deserves an arrowhead)."""
    lo, hi = t0, t1
    lo_cut = hi_cut = False
    for coeff, bound, keep_ge in (
        (d[0], box[0] - w[0], True),   # w.x + t*d.x >= xmin
        (d[0], box[2] - w[0], False),  # w.x + t*d.x <= xmax
        (d[1], box[1] - w[1], True),
        (d[1], box[3] - w[1], False),
    ):
        if coeff == 0:
            if (bound > 0 and keep_ge) or (bound < 0 and not keep_ge):
                return None  # the whole line misses the box
            continue
        t_at = bound / coeff
        lower = (coeff > 0) == keep_ge
        if lower:
            if lo is None or t_at > lo:
                lo, lo_cut = t_at, True
        else:
            if hi is None or t_at < hi:
                hi, hi_cut = t_at, True
    if lo is None or hi is None or lo > hi:
        return None
    return lo, hi, lo_cut, hi_cut


def _convex_hull(points: Sequence[tuple[Fraction, Fraction]]):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _parse_box(viewport) -> Box:
    vals = tuple(Fraction(v) for v in viewport)
    if len(vals) != 4 or vals[0] >= vals[2] or vals[1] >= vals[3]:
        raise ValueError("viewport must be (xmin, ymin, xmax, ymax) with positive extent")
    return vals


def plot_curve(f: TropicalPolynomial, viewport=(-5, -5, 5, 5)) -> str:
    """SVG document showing the curve of a two-variable polynomial next to
    its dual subdivision."""
    if f.dimension != 2:
        raise DimensionMismatch("plotting requires a two-variable polynomial")
    box = _parse_box(viewport)
    mx = (box[2] - box[0]) * Fraction(5, 100)
    my = (box[3] - box[1]) * Fraction(5, 100)
    clip_box: Box = (box[0] - mx, box[1] - my, box[2] + mx, box[3] + my)

    curve = _Panel(clip_box, 0)
    segments, isolated = curve_geometry(f)

    vertex_pts = {(w[0], w[1]) for w in isolated}
    for w, d, t0, t1 in segments:
        for t in (t0, t1):
            if t is not None:
                vertex_pts.add((w[0] + t * d[0], w[1] + t * d[1]))

    curve_parts: list[str] = []
    vertices: list[str] = []
    for v in sorted(vertex_pts):
        if clip_box[0] <= v[0] <= clip_box[2] and clip_box[1] <= v[1] <= clip_box[3]:
            px, py = curve.point(*v)
            vertices.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="3" class="vx"/>')
    for w, d, t0, t1 in segments:
        clipped = _clip(w, d, t0, t1, clip_box)
        if clipped is None:
            continue
        lo, hi, lo_cut, hi_cut = clipped
        if lo == hi:
            continue
        p0 = (w[0] + lo * d[0], w[1] + lo * d[1])
        p1 = (w[0] + hi * d[0], w[1] + hi * d[1])
        marks = ""
        if hi_cut and t1 is None:
            marks += ' marker-end="url(#arrow)"'
        if lo_cut and t0 is None:
            marks += ' marker-start="url(#arrow)"'
        curve_parts.append(
            f'<line x1="{_fmt(curve.point(*p0)[0])}" y1="{_fmt(curve.point(*p0)[1])}" '
            f'x2="{_fmt(curve.point(*p1)[0])}" y2="{_fmt(curve.point(*p1)[1])}" '
            f'class="edge"{marks}/>'
        )

    # dual picture: exponents drawn with both axes reversed
    faces = regular_subdivision_2d(f)
    support = sorted(f.support)
    dual_pts = [(-Fraction(e[0]), -Fraction(e[1])) for e in support]
    dxmin = min(p[0] for p in dual_pts)
    dxmax = max(p[0] for p in dual_pts)
    dymin = min(p[1] for p in dual_pts)
    dymax = max(p[1] for p in dual_pts)
    pad = Fraction(1, 2)
    dual_box: Box = (dxmin - pad, dymin - pad, dxmax + pad, dymax + pad)
    dual = _Panel(dual_box, _PANEL + 2 * _PAD)

    dual_parts: list[str] = []
    for face in faces:
        pts = [(-Fraction(e[0]), -Fraction(e[1])) for e in face.points]
        if len(pts) == 1:
            dual_parts.append(
                f'<circle cx="{_fmt(dual.point(*pts[0])[0])}" '
                f'cy="{_fmt(dual.point(*pts[0])[1])}" r="3" class="sup"/>'
            )
        elif len(pts) == 2:
            dual_parts.append(
                f'<line x1="{_fmt(dual.point(*pts[0])[0])}" y1="{_fmt(dual.point(*pts[0])[1])}" '
                f'x2="{_fmt(dual.point(*pts[1])[0])}" y2="{_fmt(dual.point(*pts[1])[1])}" '
                f'class="dedge"/>'
            )
        else:
            hull = _convex_hull(pts)
            path = " ".join(dual.xy(*p) for p in hull)
            dual_parts.append(f'<polygon points="{path}" class="face"/>')
    for e in support:
        p = (-Fraction(e[0]), -Fraction(e[1]))
        dual_parts.append(
            f'<circle cx="{_fmt(dual.point(*p)[0])}" cy="{_fmt(dual.point(*p)[1])}" '
            f'r="2.5" class="sup"/>'
        )

    width = 2 * _PANEL + 4 * _PAD
    height = _PANEL + 2 * _PAD
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        "<defs>"
        '<marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="3" '
        'orient="auto" markerUnits="strokeWidth">'
        '<path d="M0,0 L6,3 L0,6 z" fill="#1f6f8b"/></marker>'
        "</defs>",
        "<style>"
        ".edge{stroke:#1f6f8b;stroke-width:2;fill:none}"
        ".vx{fill:#13424f}"
        ".face{fill:#f0d9b5;fill-opacity:0.6;stroke:#8a5a2b;stroke-width:1.5}"
        ".dedge{stroke:#8a5a2b;stroke-width:1.5}"
        ".sup{fill:#5a3c1e}"
        "</style>",
        f'<rect x="{_PAD}" y="{_PAD}" width="{_PANEL}" height="{_PANEL}" '
        'fill="none" stroke="#bbbbbb"/>',
        *curve_parts,
        *vertices,
        *dual_parts,
        "</svg>",
    ]
    return "\n".join(parts) + "\n"
