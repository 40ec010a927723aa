"""Exact computation with min-plus (tropical) polynomials.

The package works over the rationals extended by +infinity, with min as
addition and + as multiplication.  It provides hypersurface membership,
cell decompositions of finite intersections, topological reports
(emptiness, connected components, dimension), tropical determinants and
consistency of linear systems, CNF-to-system encoders, and SVG plots of
plane curves with their dual subdivisions.
"""

from __future__ import annotations

from .cells import (
    Cell,
    DEFAULT_CAP,
    SubdivisionFace,
    enumerate_cells,
    iter_cells,
    regular_subdivision_2d,
    witness_or_empty,
)
from .errors import (
    CapExceeded,
    DimensionMismatch,
    EmptyPrevariety,
    FormatError,
    MinplusError,
)
from .gadgets import (
    CnfFormula,
    Encoding,
    brute_force_count,
    clause_polynomial,
    encode,
    encode_connectivity,
    encode_consistency,
    encode_intersection,
    encoding_to_text,
    parse_dimacs,
    zero_one_surface,
    zero_one_two_surface,
)
from .linsolve import (
    InteriorPoint,
    LinearSystem,
    LpResult,
    affine_dimension,
    feasible,
    linear_system,
    maximize_margin,
    optimize,
    relative_interior,
)
from .polynomials import (
    Monomial,
    TropicalPolynomial,
    load_system,
    parse_polynomial,
    parse_system,
    point,
    polynomial_to_text,
    system_to_text,
    trop_add,
    trop_mul,
    trop_product,
)
from .rationals import INF, ExtRational, as_fraction, parse_ext
from .svgplot import curve_vertices, plot_curve
from .topology import (
    TopologyReport,
    analyze,
    connected_components,
    intersect_nonempty,
    is_connected,
    maximal_cells,
    prevariety_dimension,
    tropical_combination,
)
from .tropmat import (
    LinearTropicalSystem,
    TropicalMatrix,
    is_singular,
    m_consistency_linear,
    matrix_to_text,
    parse_matrix,
    singular_submatrix,
    trop_det,
    trop_det_with_assignment,
)

__version__ = "0.1.0"

__all__ = [
    "Cell",
    "CnfFormula",
    "CapExceeded",
    "DEFAULT_CAP",
    "DimensionMismatch",
    "EmptyPrevariety",
    "Encoding",
    "ExtRational",
    "FormatError",
    "INF",
    "InteriorPoint",
    "LinearSystem",
    "LinearTropicalSystem",
    "LpResult",
    "MinplusError",
    "Monomial",
    "SubdivisionFace",
    "TopologyReport",
    "TropicalMatrix",
    "TropicalPolynomial",
    "affine_dimension",
    "analyze",
    "as_fraction",
    "brute_force_count",
    "clause_polynomial",
    "connected_components",
    "curve_vertices",
    "encode",
    "encode_connectivity",
    "encode_consistency",
    "encode_intersection",
    "encoding_to_text",
    "enumerate_cells",
    "feasible",
    "intersect_nonempty",
    "is_connected",
    "is_singular",
    "iter_cells",
    "linear_system",
    "load_system",
    "m_consistency_linear",
    "matrix_to_text",
    "maximal_cells",
    "maximize_margin",
    "optimize",
    "parse_dimacs",
    "parse_ext",
    "parse_matrix",
    "parse_polynomial",
    "parse_system",
    "plot_curve",
    "point",
    "polynomial_to_text",
    "prevariety_dimension",
    "regular_subdivision_2d",
    "relative_interior",
    "singular_submatrix",
    "system_to_text",
    "trop_add",
    "trop_det",
    "trop_det_with_assignment",
    "trop_mul",
    "trop_product",
    "tropical_combination",
    "witness_or_empty",
    "zero_one_surface",
    "zero_one_two_surface",
]
