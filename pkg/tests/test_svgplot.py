"""SVG rendering: structure, clipping, duality, and byte determinism."""

from __future__ import annotations

import random
import re
from fractions import Fraction

import pytest

from minplus.cells import regular_subdivision_2d
from minplus.errors import DimensionMismatch
from minplus.polynomials import TropicalPolynomial, parse_polynomial
from minplus.svgplot import curve_geometry, curve_vertices, plot_curve

F = Fraction

LINE = parse_polynomial("0 : 1 0\n0 : 0 1\n0 : 0 0")


def generic_cubic(seed: int = 504) -> TropicalPolynomial:
    rng = random.Random(seed)
    terms = []
    for a in range(4):
        for b in range(4 - a):
            terms.append(((a, b), F(a * a + a * b + b * b) + F(rng.randint(0, 99), 1000)))
    return TropicalPolynomial(2, terms)


def test_output_is_deterministic():
    a = plot_curve(LINE)
    b = plot_curve(LINE)
    assert a == b
    assert a.startswith("<svg ")
    assert a.rstrip().endswith("</svg>")


def test_line_picture_contents():
    svg = plot_curve(LINE)
    assert svg.count('class="edge"') == 3
    assert svg.count("url(#arrow)") == 3       # every ray is clipped
    assert svg.count('class="vx"') == 1        # the apex
    assert svg.count('class="face"') == 1      # the standard triangle
    assert svg.count('class="sup"') == 3


def test_vertices_equal_dual_triangles_for_a_generic_cubic():
    f = generic_cubic()
    assert len(curve_vertices(f)) == sum(
        1 for face in regular_subdivision_2d(f) if len(face.points) >= 3
    )
    svg = plot_curve(f, (-8, -8, 8, 8))
    assert svg.count('class="vx"') == 9
    assert svg.count('class="edge"') == 18


def test_single_monomial_plots_empty_curve():
    f = parse_polynomial("5 : 1 2")
    svg = plot_curve(f)
    assert svg.count('class="edge"') == 0
    assert svg.count('class="vx"') == 0
    assert svg.count('class="face"') == 0
    # the one support point is drawn in the dual panel (once as the
    # subdivision's single face, once as a support dot)
    assert svg.count('class="sup"') == 2


def test_requires_two_variables():
    with pytest.raises(DimensionMismatch):
        plot_curve(parse_polynomial("0 : 1\n0 : 0"))


def test_viewport_validation():
    with pytest.raises(ValueError):
        plot_curve(LINE, (0, 0, 0, 5))   # zero width
    with pytest.raises(ValueError):
        plot_curve(LINE, (1, 2, 3))      # wrong arity


def test_all_coordinates_stay_on_canvas():
    svg = plot_curve(generic_cubic(), (-9, -9, 9, 9))
    width = float(re.search(r'width="(\d+)"', svg).group(1))
    height = float(re.search(r'height="(\d+)"', svg).group(1))
    for attr in ("x1", "x2", "cx"):
        for value in re.findall(rf'{attr}="(-?[\d.]+)"', svg):
            assert -1 <= float(value) <= width + 1
    for attr in ("y1", "y2", "cy"):
        for value in re.findall(rf'{attr}="(-?[\d.]+)"', svg):
            assert -1 <= float(value) <= height + 1


def test_far_away_viewport_drops_offscreen_pieces():
    # center the viewport far from the curve: nothing of it remains visible
    svg = plot_curve(LINE, (100, 100, 101, 101))
    assert svg.count('class="vx"') == 0
    # only the southwest diagonal ray x=y<=0 never enters [99.95, 101.05]^2
    assert svg.count('class="edge"') == 0


def test_ray_clipping_marks_only_unbounded_ends():
    f = generic_cubic()
    svg = plot_curve(f, (-20, -20, 20, 20))
    # in a wide viewport the bounded edges carry no arrowheads: count rays
    segments, _ = curve_geometry(f)
    unbounded_ends = sum((t0 is None) + (t1 is None) for _, _, t0, t1 in segments)
    assert svg.count("url(#arrow)") == unbounded_ends


def test_geometry_segments_lie_on_the_curve():
    rng = random.Random(801)
    f = generic_cubic(9)
    segments, isolated = curve_geometry(f)
    assert not isolated
    for w, d, t0, t1 in segments:
        ts = []
        if t0 is not None and t1 is not None:
            ts = [t0, (t0 + t1) / 2, t1]
        elif t0 is not None:
            ts = [t0, t0 + 1, t0 + 7]
        elif t1 is not None:
            ts = [t1, t1 - 1, t1 - 7]
        for t in ts:
            x = (w[0] + t * d[0], w[1] + t * d[1])
            assert f.is_member(x)


def test_dual_axes_point_left_and_down():
    """Exponent (1,0) must land left of (0,0), and (0,1) below it."""
    svg = plot_curve(LINE)
    dots = re.findall(r'<circle cx="([\d.]+)" cy="([\d.]+)" r="2.5" class="sup"/>', svg)
    coords = [(float(x), float(y)) for x, y in dots]
    # support order is sorted: (0,0), (0,1), (1,0)
    origin, e2, e1 = coords
    assert e1[0] < origin[0] and abs(e1[1] - origin[1]) < 1e-9
    assert e2[1] > origin[1] and abs(e2[0] - origin[0]) < 1e-9
