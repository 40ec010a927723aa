"""Min-plus polynomials over exact rationals.

A min-plus polynomial is a finite set of monomials ``(exponent, coefficient)``
interpreted as the piecewise-affine function

    f(x) = min over terms of (coefficient + exponent . x).

Its corner locus -- the points where the minimum is attained by at least two
terms -- is the hypersurface of ``f``.  Everything here is exact: points and
coefficients are rationals, never floats.

Text format (one polynomial): one monomial per line, ``coeff : e1 e2 ... en``
with rational ``coeff`` (``p/q`` or integer).  ``#`` starts a comment.  Inside
a system file, polynomials are separated by a line containing ``---``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch, FormatError
from .rationals import as_fraction

Point = tuple[Fraction, ...]
Exponent = tuple[int, ...]


def point(coords: Iterable) -> Point:
    """Coerce a sequence of rationals into an exact point."""
    return tuple(as_fraction(c) for c in coords)


@dataclass(frozen=True)
class Monomial:
    """A single term: ``coefficient + exponent . x`` in min-plus reading."""

    exponent: Exponent
    coefficient: Fraction

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponent)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        object.__setattr__(self, "exponent", exps)
        object.__setattr__(self, "coefficient", as_fraction(self.coefficient))

    @property
    def total_degree(self) -> int:
        return sum(self.exponent)

    def value_at(self, x: Point) -> Fraction:
        v = self.coefficient
        for e, xi in zip(self.exponent, x):
            if e:
                v += e * xi
        return v


class TropicalPolynomial:
    """An immutable min-plus polynomial in ``dimension`` variables."""

    __slots__ = ("dimension", "monomials", "_coeffs")

    def __init__(self, dimension: int, terms: Iterable, degree_bound: int | None = None):
        dimension = int(dimension)
        if dimension < 1:
            raise ValueError("dimension must be at least 1")
        mons = []
        for t in terms:
            if isinstance(t, Monomial):
                m = t
            else:
                exponent, coefficient = t
                m = Monomial(tuple(exponent), coefficient)
            if len(m.exponent) != dimension:
                raise DimensionMismatch(
                    f"exponent {m.exponent} has length {len(m.exponent)}, expected {dimension}"
                )
            mons.append(m)
        if not mons:
            raise ValueError("a polynomial needs at least one monomial")
        coeffs: dict[Exponent, Fraction] = {}
        for m in mons:
            if m.exponent in coeffs:
                raise ValueError(f"duplicate exponent {m.exponent}")
            coeffs[m.exponent] = m.coefficient
        if degree_bound is not None:
            worst = max(m.total_degree for m in mons)
            if worst > degree_bound:
                raise ValueError(f"degree {worst} exceeds declared bound {degree_bound}")
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "monomials", tuple(sorted(mons, key=lambda m: m.exponent)))
        object.__setattr__(self, "_coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("TropicalPolynomial is immutable")

    @classmethod
    def constant(cls, dimension: int, value) -> "TropicalPolynomial":
        return cls(dimension, [((0,) * dimension, value)])

    @classmethod
    def linear_term(cls, dimension: int, var: int, value=0) -> "TropicalPolynomial":
        """The single monomial ``value + x_var`` (``var`` is 0-based)."""
        exp = [0] * dimension
        exp[var] = 1
        return cls(dimension, [(tuple(exp), value)])

    @property
    def support(self) -> tuple[Exponent, ...]:
        return tuple(m.exponent for m in self.monomials)

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self._coeffs[tuple(exponent)]

    def degree(self) -> int:
        return max(m.total_degree for m in self.monomials)

    def evaluate(self, x: Sequence) -> tuple[Fraction, frozenset[Exponent]]:
        """The value at ``x`` and the set of exponents attaining it."""
        x = self._check_point(x)
        best: Fraction | None = None
        argmin: list[Exponent] = []
        for m in self.monomials:
            v = m.value_at(x)
            if best is None or v < best:
                best = v
                argmin = [m.exponent]
            elif v == best:
                argmin.append(m.exponent)
        assert best is not None
        return best, frozenset(argmin)

    def is_member(self, x: Sequence) -> bool:
        """Whether ``x`` lies on the hypersurface (minimum attained twice)."""
        x = self._check_point(x)
        best: Fraction | None = None
        count = 0
        for m in self.monomials:
            v = m.value_at(x)
            if best is None or v < best:
                best, count = v, 1
            elif v == best:
                count += 1
        return count >= 2

    def _check_point(self, x: Sequence) -> Point:
        pt = point(x)
        if len(pt) != self.dimension:
            raise DimensionMismatch(
                f"point has {len(pt)} coordinates, polynomial has {self.dimension}"
            )
        return pt

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropicalPolynomial):
            return NotImplemented
        return self.dimension == other.dimension and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.dimension, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        terms = ", ".join(f"{m.coefficient}:{','.join(map(str, m.exponent))}" for m in self.monomials)
        return f"TropicalPolynomial({self.dimension}; {terms})"


def trop_add(f: TropicalPolynomial, g: TropicalPolynomial) -> TropicalPolynomial:
    """Min-plus sum: union of supports, termwise minimum on shared exponents."""
    if f.dimension != g.dimension:
        raise DimensionMismatch("polynomials live in different dimensions")
    coeffs = dict(f._coeffs)
    for exp, c in g._coeffs.items():
        if exp in coeffs:
            coeffs[exp] = min(coeffs[exp], c)
        else:
            coeffs[exp] = c
    return TropicalPolynomial(f.dimension, coeffs.items())


def trop_mul(f: TropicalPolynomial, g: TropicalPolynomial) -> TropicalPolynomial:
    """Min-plus product: Minkowski sum of supports with min-convolved coefficients."""
    if f.dimension != g.dimension:
        raise DimensionMismatch("polynomials live in different dimensions")
    coeffs: dict[Exponent, Fraction] = {}
    for ea, ca in f._coeffs.items():
        for eb, cb in g._coeffs.items():
            exp = tuple(a + b for a, b in zip(ea, eb))
            c = ca + cb
            old = coeffs.get(exp)
            if old is None or c < old:
                coeffs[exp] = c
    return TropicalPolynomial(f.dimension, coeffs.items())


def trop_product(factors: Iterable[TropicalPolynomial]) -> TropicalPolynomial:
    """Fold ``trop_mul`` over at least one factor."""
    it = iter(factors)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("need at least one factor") from None
    for f in it:
        acc = trop_mul(acc, f)
    return acc


# ---------------------------------------------------------------------------
# text format


def polynomial_to_text(f: TropicalPolynomial) -> str:
    lines = [f"{m.coefficient} : {' '.join(map(str, m.exponent))}" for m in f.monomials]
    return "\n".join(lines) + "\n"


def system_to_text(fs: Sequence[TropicalPolynomial]) -> str:
    return "---\n".join(polynomial_to_text(f) for f in fs)


def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def parse_system(text: str) -> list[TropicalPolynomial]:
    """Parse a system file: ``---``-separated polynomials, ``#`` comments."""
    blocks: list[list[tuple[int, str]]] = [[]]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line == "---":
            blocks.append([])
            continue
        blocks[-1].append((lineno, line))

    polys: list[TropicalPolynomial] = []
    dim: int | None = None
    for block in blocks:
        if not block:
            continue
        terms = []
        for lineno, line in block:
            if ":" not in line:
                raise FormatError("expected 'coeff : e1 e2 ...'", lineno)
            head, _, tail = line.partition(":")
            try:
                coeff = Fraction(head.strip())
            except (ValueError, ZeroDivisionError):
                raise FormatError(f"bad coefficient {head.strip()!r}", lineno) from None
            try:
                exps = tuple(int(tok) for tok in tail.split())
            except ValueError:
                raise FormatError(f"bad exponent list {tail.strip()!r}", lineno) from None
            if not exps:
                raise FormatError("empty exponent list", lineno)
            if any(e < 0 for e in exps):
                raise FormatError("exponents must be nonnegative", lineno)
            if dim is None:
                dim = len(exps)
            elif len(exps) != dim:
                raise FormatError(
                    f"exponent list has {len(exps)} entries, earlier lines had {dim}", lineno
                )
            terms.append((exps, coeff))
        first_line = block[0][0]
        try:
            polys.append(TropicalPolynomial(dim, terms))
        except ValueError as exc:
            raise FormatError(str(exc), first_line) from None
    if not polys:
        raise FormatError("no polynomials found")
    return polys


def parse_polynomial(text: str) -> TropicalPolynomial:
    polys = parse_system(text)
    if len(polys) != 1:
        raise FormatError(f"expected one polynomial, found {len(polys)}")
    return polys[0]


def load_system(path: str) -> list[TropicalPolynomial]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_system(fh.read())


def iter_points_text(pts: Iterable[Point]) -> Iterator[str]:
    for p in pts:
        yield " ".join(str(c) for c in p)
