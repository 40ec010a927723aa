"""Min-plus matrices: tropical determinants, singularity, and the
codimension test for systems of linear min-plus polynomials.

The tropical determinant of a square matrix is the minimum over all
permutations of the entry sums along the permutation — an exact min-cost
perfect assignment.  An entry of ``+inf`` marks a forbidden cell; when every
permutation crosses one, the determinant is ``+inf``.  A square matrix is
*tropically singular* when the minimum is attained by at least two
permutations.

For ``m`` linear polynomials in ``n`` variables (coefficient matrix of shape
``m x (n+1)``, last column the constant terms, absent terms ``+inf``),
``m_consistency_linear`` decides whether their intersection is as large as a
generic one: an ``(n-m)``-dimensional set when ``m <= n`` (equivalent to
every ``m x m`` column-submatrix being nonsingular), the empty set when
``m = n+1``, and never for ``m > n+1``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FormatError
from .polynomials import TropicalPolynomial
from .rationals import INF, ExtRational, parse_ext


class TropicalMatrix:
    """Rectangular grid of ``ExtRational`` entries."""

    __slots__ = ("rows",)

    rows: tuple[tuple[ExtRational, ...], ...]

    def __init__(self, rows: Iterable[Iterable]):
        grid = tuple(tuple(ExtRational(v) for v in row) for row in rows)
        if not grid or not grid[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise ValueError("matrix rows must all have the same length")
        object.__setattr__(self, "rows", grid)

    def __setattr__(self, name, value):
        raise AttributeError("TropicalMatrix is immutable")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entry(self, i: int, j: int) -> ExtRational:
        return self.rows[i][j]

    def transpose(self) -> "TropicalMatrix":
        return TropicalMatrix(zip(*self.rows))

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "TropicalMatrix":
        return TropicalMatrix(
            tuple(self.rows[i][j] for j in col_indices) for i in row_indices
        )

    def replaced(self, i: int, j: int, value) -> "TropicalMatrix":
        value = ExtRational(value)
        return TropicalMatrix(
            tuple(value if (r == i and c == j) else self.rows[r][c]
                  for c in range(self.ncols))
            for r in range(self.nrows)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropicalMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"TropicalMatrix({[[str(v) for v in row] for row in self.rows]})"


def matrix_to_text(matrix: TropicalMatrix) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in matrix.rows) + "\n"


def parse_matrix(text: str) -> TropicalMatrix:
    """Parse a matrix: one row per line, whitespace-separated entries,
    ``inf`` for +infinity, rationals as ``p/q``.  ``#`` starts a comment."""
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            row = [parse_ext(tok) for tok in line.split()]
        except ValueError as exc:
            raise FormatError(str(exc), line=lineno) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise FormatError(
                f"expected {width} entries, found {len(row)}", line=lineno)
        rows.append(row)
    if not rows:
        raise FormatError("no matrix rows found")
    return TropicalMatrix(rows)


# ---------------------------------------------------------------------------
# tropical determinant = exact min-cost perfect assignment


def _min_assignment(a: Sequence[Sequence[ExtRational]]):
    """Minimum-cost perfect assignment over exact rationals.

    Returns ``(value, perm)`` with ``perm[i]`` the column matched to row
    ``i``, or ``(INF, None)`` when every assignment crosses a +inf entry.
    Hungarian method with potentials; all comparisons and updates are exact.
    """
    n = len(a)
    u = [Fraction(0)] * (n + 1)
    v = [Fraction(0)] * (n + 1)
    match = [0] * (n + 1)  # match[j] = row (1-based) assigned to column j; 0 = free
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = INF
            j1 = 0
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = a[i0 - 1][j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            if not delta.is_finite:
                return INF, None  # row i cannot be matched along finite entries
            d = delta.finite()
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += d
                    v[j] -= d
                else:
                    minv[j] = minv[j] - d
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            match[j0] = match[way[j0]]
            j0 = way[j0]
    perm = [0] * n
    for j in range(1, n + 1):
        perm[match[j] - 1] = j - 1
    total = ExtRational(0)
    for i in range(n):
        total = total + a[i][perm[i]]
    return total, tuple(perm)


def _require_square(matrix: TropicalMatrix):
    if not matrix.is_square:
        raise DimensionMismatch(
            f"determinant requires a square matrix, got {matrix.nrows}x{matrix.ncols}")


def trop_det_with_assignment(matrix: TropicalMatrix):
    """Tropical determinant together with an optimal permutation (or ``None``
    when no permutation stays within finite entries)."""
    _require_square(matrix)
    return _min_assignment(matrix.rows)


def trop_det(matrix: TropicalMatrix) -> ExtRational:
    """Minimum over permutations of the summed entries along the permutation."""
    return trop_det_with_assignment(matrix)[0]


def is_singular(matrix: TropicalMatrix) -> bool:
    """True when at least two permutations attain the tropical determinant.

    Uses the bump probe: with an optimal permutation in hand, forbid one of
    its cells at a time and recompute; the minimum survives some bump exactly
    when a second optimal permutation exists.  A matrix without any finite
    assignment reports singular.
    """
    _require_square(matrix)
    det, perm = _min_assignment(matrix.rows)
    if perm is None:
        return True
    for j in range(matrix.nrows):
        bumped = matrix.replaced(j, perm[j], INF)
        if _min_assignment(bumped.rows)[0] == det:
            return True
    return False


# ---------------------------------------------------------------------------
# systems of linear min-plus polynomials


def _linear_row(f: TropicalPolynomial) -> tuple[ExtRational, ...]:
    n = f.dimension
    row = [INF] * (n + 1)
    for m in f.monomials:
        deg = m.total_degree
        if deg > 1:
            raise ValueError("polynomial is not linear")
        if deg == 0:
            row[n] = ExtRational(m.coefficient)
        else:
            var = next(j for j, e in enumerate(m.exponent) if e)
            row[var] = ExtRational(m.coefficient)
    return tuple(row)


class LinearTropicalSystem:
    """``m`` linear min-plus polynomials in ``n`` variables and their
    ``m x (n+1)`` coefficient matrix (last column: constant terms)."""

    __slots__ = ("polynomials", "matrix")

    def __init__(self, polynomials: Sequence[TropicalPolynomial]):
        fs = tuple(polynomials)
        if not fs:
            raise ValueError("need at least one polynomial")
        n = fs[0].dimension
        if any(f.dimension != n for f in fs):
            raise DimensionMismatch("polynomials live in different dimensions")
        rows = tuple(_linear_row(f) for f in fs)
        object.__setattr__(self, "polynomials", fs)
        object.__setattr__(self, "matrix", TropicalMatrix(rows))

    def __setattr__(self, name, value):
        raise AttributeError("LinearTropicalSystem is immutable")

    @property
    def m(self) -> int:
        return len(self.polynomials)

    @property
    def n(self) -> int:
        return self.matrix.ncols - 1

    @classmethod
    def from_matrix(cls, matrix: TropicalMatrix) -> "LinearTropicalSystem":
        if matrix.ncols < 2:
            raise ValueError("coefficient matrix needs at least two columns")
        n = matrix.ncols - 1
        fs = []
        for i, row in enumerate(matrix.rows):
            terms = []
            for j in range(n):
                if row[j].is_finite:
                    exponent = tuple(1 if k == j else 0 for k in range(n))
                    terms.append((exponent, row[j].finite()))
            if row[n].is_finite:
                terms.append(((0,) * n, row[n].finite()))
            if not terms:
                raise ValueError(f"row {i + 1} has no finite entry")
            fs.append(TropicalPolynomial(n, terms))
        return cls(fs)


def singular_submatrix(sys: LinearTropicalSystem) -> tuple[int, ...] | None:
    """Column indices of the first tropically singular ``m x m``
    column-submatrix of the coefficient matrix, or ``None`` if every one is
    nonsingular.  Columns are scanned in lexicographic order."""
    m = sys.m
    cols = sys.matrix.ncols
    if m > cols:
        return None
    all_rows = range(m)
    for chosen in combinations(range(cols), m):
        if is_singular(sys.matrix.submatrix(all_rows, chosen)):
            return chosen
    return None


def m_consistency_linear(sys: LinearTropicalSystem) -> bool:
    """Decide whether the intersection of the ``m`` hyperplanes is as large
    as a generic one.

    ``m > n+1``: never (returns ``False``).  ``m = n+1``: exactly when the
    intersection is empty.  ``m <= n``: exactly when every ``m x m``
    column-submatrix of the coefficient matrix is tropically nonsingular,
    which certifies an ``(n-m)``-dimensional intersection.
    """
    m, n = sys.m, sys.n
    if m > n + 1:
        return False
    if m == n + 1:
        from .topology import intersect_nonempty

        return not intersect_nonempty(sys.polynomials)
    return singular_submatrix(sys) is None
