"""CNF formulas rendered as systems of min-plus polynomials.

Three constructions, all exact over the rationals.  Writing ``s`` for the
0/1 encoding of truth values, each builds a system whose intersection
mirrors the satisfying assignments of the formula:

``intersection``
    One quadric per coordinate pins it to {0,1}; one polynomial per clause
    (by its count of positive literals) cuts the hypercube down to the
    satisfying points.  The intersection is exactly ``s({assignments})``,
    so nonemptiness is satisfiability and the point count is the model
    count.  Degrees stay at most 2: clauses with three positive literals
    are first rewritten with a fresh auxiliary variable forced to the
    complement of one literal, which preserves the model count.

``consistency``
    The same system embedded one coordinate higher, plus a polynomial per
    variable turning each satisfying point into an upward half-ray in the
    last coordinate.  Empty iff unsatisfiable; otherwise a disjoint union
    of rays, one per model.  Degrees at most 2.

``connectivity``
    Cubic pins to {0,1,2} per coordinate plus an anchor apparatus making
    the intersection ``s({models}) x {0}`` together with the single point
    ``(2, ..., 2)``.  Always nonempty; connected iff unsatisfiable; the
    component count is the model count plus one.  Degrees at most 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FormatError
from .polynomials import (
    TropicalPolynomial,
    polynomial_to_text,
    trop_mul,
    trop_product,
)

Literal = int  # DIMACS convention: +v / -v, 1-based variable index
Clause = tuple[Literal, ...]

_MAX_BRUTE_VARS = 24


class CnfFormula:
    """A CNF formula with clauses of at most three literals.

    Clauses are normalized on construction: duplicate literals collapse,
    tautological clauses (``v`` and ``-v`` together) drop out.  An empty
    clause is legal and marks the formula unsatisfiable.
    """

    __slots__ = ("n_vars", "clauses")

    n_vars: int
    clauses: tuple[Clause, ...]

    def __init__(self, n_vars: int, clauses: Iterable[Iterable[Literal]]):
        if n_vars < 0:
            raise ValueError("variable count must be nonnegative")
        normalized: list[Clause] = []
        for clause in clauses:
            lits = []
            seen = set()
            for lit in clause:
                lit = int(lit)
                if lit == 0 or not 1 <= abs(lit) <= n_vars:
                    raise ValueError(f"literal {lit} out of range for {n_vars} variables")
                if lit in seen:
                    continue
                seen.add(lit)
                lits.append(lit)
            if any(-lit in seen for lit in lits):
                continue  # tautology: satisfied by every assignment
            if len(lits) > 3:
                raise ValueError(f"clause has {len(lits)} literals; at most 3 are supported")
            normalized.append(tuple(lits))
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "clauses", tuple(normalized))

    def __setattr__(self, name, value):
        raise AttributeError("CnfFormula is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, CnfFormula):
            return NotImplemented
        return self.n_vars == other.n_vars and self.clauses == other.clauses

    def __hash__(self):
        return hash((self.n_vars, self.clauses))

    def __repr__(self) -> str:
        return f"CnfFormula(n_vars={self.n_vars}, clauses={list(self.clauses)})"


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF: ``c`` comments, a ``p cnf <vars> <clauses>`` header,
    then 0-terminated clauses of signed integers.  A ``%`` line ends the
    clause section (a convention of common benchmark files)."""
    n_vars: int | None = None
    declared = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if n_vars is not None:
                raise FormatError("duplicate problem line", line=lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError("problem line must be 'p cnf <vars> <clauses>'", line=lineno)
            try:
                n_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError("non-integer counts in problem line", line=lineno) from None
            continue
        if n_vars is None:
            raise FormatError("clause before 'p cnf' header", line=lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"invalid literal {tok!r}", line=lineno) from None
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if n_vars is None:
        raise FormatError("missing 'p cnf' header")
    if current:
        clauses.append(current)  # tolerate a missing final terminator
    if declared is not None and declared != len(clauses):
        raise FormatError(
            f"header declares {declared} clauses, found {len(clauses)}")
    try:
        return CnfFormula(n_vars, clauses)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def brute_force_count(cnf: CnfFormula) -> int:
    """Exact model count by exhaustive enumeration (guarded to 24 variables)."""
    n = cnf.n_vars
    if n > _MAX_BRUTE_VARS:
        raise ValueError(f"brute force is limited to {_MAX_BRUTE_VARS} variables")
    count = 0
    for mask in range(1 << n):
        for clause in cnf.clauses:
            for lit in clause:
                bit = (mask >> (abs(lit) - 1)) & 1
                if bit == (1 if lit > 0 else 0):
                    break
            else:
                break  # clause falsified
        else:
            count += 1
    return count


# ---------------------------------------------------------------------------
# building blocks


def _binomial(dim: int, coord: int, tau: int) -> TropicalPolynomial:
    """``0 . x_coord (+) tau`` — hypersurface {x_coord = tau}."""
    unit = tuple(1 if j == coord else 0 for j in range(dim))
    return TropicalPolynomial(dim, [(unit, 0), ((0,) * dim, tau)])


def zero_one_surface(dim: int, coord: int) -> TropicalPolynomial:
    """Quadric whose hypersurface is ``{x : x_coord in {0, 1}}``."""
    return trop_mul(_binomial(dim, coord, 1), _binomial(dim, coord, 0))


def zero_one_two_surface(dim: int, coord: int) -> TropicalPolynomial:
    """Cubic whose hypersurface is ``{x : x_coord in {0, 1, 2}}``."""
    return trop_product([
        _binomial(dim, coord, 1),
        _binomial(dim, coord, 0),
        _binomial(dim, coord, 2),
    ])


def clause_polynomial(dim: int, pos: Sequence[int], neg: Sequence[int]) -> TropicalPolynomial:
    """Polynomial of one clause with at most two positive literals.

    ``pos``/``neg`` are coordinate indices of the positive and negative
    literals.  On {0,1}-points the hypersurface membership is exactly clause
    satisfaction; the degree is at most 2.
    """
    if len(pos) > 2:
        raise ValueError("clauses with three positive literals need the auxiliary rewrite")
    if len(pos) == 2 and neg:
        if len(neg) != 1:
            raise ValueError("too many literals in one clause")
        return _two_positive_one_negative(dim, pos[0], pos[1], neg[0])
    factors = [_binomial(dim, c, 1) for c in pos]
    if neg or not pos:
        # one linear leg for all negative literals, constant term included
        terms = [(tuple(1 if j == c else 0 for j in range(dim)), 0) for c in neg]
        terms.append(((0,) * dim, 0))
        factors.append(TropicalPolynomial(dim, terms))
    return trop_product(factors)


def _two_positive_one_negative(dim: int, i1: int, i2: int, i3: int) -> TropicalPolynomial:
    """Quadric for ``y_{i1} or y_{i2} or not y_{i3}`` on {0,1}-points."""

    def e(*pairs):
        exp = [0] * dim
        for c, k in pairs:
            exp[c] = k
        return tuple(exp)

    return TropicalPolynomial(dim, [
        (e((i1, 1), (i2, 1)), 0),
        (e((i1, 1)), 1),
        (e((i2, 1)), 1),
        (e((i3, 1)), 0),
        (e((i3, 2)), 0),
        ((0,) * dim, 1),
    ])


@dataclass(frozen=True)
class Encoding:
    """A CNF formula rendered as a min-plus polynomial system.

    ``dimension`` counts the coordinates of the ambient space;
    ``var_coord[v]`` is the coordinate of original variable ``v`` (1-based
    DIMACS index), ``aux_coords`` lists coordinates of auxiliary variables
    introduced for clauses with three positive literals, and ``ray_coord``
    is the extra embedding coordinate of the consistency and connectivity
    variants (``None`` for the plain intersection variant).
    """

    variant: str
    polynomials: tuple[TropicalPolynomial, ...]
    dimension: int
    var_coord: dict[int, int]
    aux_coords: tuple[int, ...]
    ray_coord: int | None


def _rewrite_three_positive(cnf: CnfFormula) -> tuple[int, list[tuple[list[int], list[int]]]]:
    """Replace each clause with three positive literals by three clauses over
    a fresh auxiliary variable (forced to the complement of the third
    literal, so the model count is unchanged).

    Returns the total variable count and the clause list as
    ``(positive coordinate list, negative coordinate list)`` pairs over
    0-based coordinates; auxiliary variables take the coordinates after the
    original ones, in clause order.
    """
    n = cnf.n_vars
    out: list[tuple[list[int], list[int]]] = []
    next_aux = n
    for clause in cnf.clauses:
        pos = [lit - 1 for lit in clause if lit > 0]
        neg = [-lit - 1 for lit in clause if lit < 0]
        if len(pos) == 3:
            z = next_aux
            next_aux += 1
            out.append(([pos[0], pos[1]], [z]))  # y1 v y2 v -z
            out.append(([pos[2], z], []))        # y3 v z
            out.append(([], [pos[2], z]))        # -y3 v -z
        else:
            out.append((pos, neg))
    return next_aux, out


def _base_maps(cnf: CnfFormula, n_total: int) -> tuple[dict[int, int], tuple[int, ...]]:
    var_coord = {v: v - 1 for v in range(1, cnf.n_vars + 1)}
    aux = tuple(range(cnf.n_vars, n_total))
    return var_coord, aux


def encode_intersection(cnf: CnfFormula) -> Encoding:
    """System whose intersection is exactly the 0/1 image of the models."""
    if cnf.n_vars < 1:
        raise ValueError("encoding needs at least one variable")
    n_total, clause_data = _rewrite_three_positive(cnf)
    dim = n_total
    polys = [zero_one_surface(dim, c) for c in range(dim)]
    polys.extend(clause_polynomial(dim, pos, neg) for pos, neg in clause_data)
    var_coord, aux = _base_maps(cnf, n_total)
    return Encoding("intersection", tuple(polys), dim, var_coord, aux, None)


def encode_consistency(cnf: CnfFormula) -> Encoding:
    """Intersection-variant system embedded one coordinate higher, with each
    model point stretched into an upward half-ray in the last coordinate."""
    if cnf.n_vars < 1:
        raise ValueError("encoding needs at least one variable")
    n_total, clause_data = _rewrite_three_positive(cnf)
    dim = n_total + 1
    ray = n_total
    polys = [zero_one_surface(dim, c) for c in range(n_total)]
    for c in range(n_total):
        # 0.x_c^2 (+) 0.x_c (+) 1 (+) 1.x_ray : turns the pin into a ray
        sq = tuple(2 if j == c else 0 for j in range(dim))
        lin = tuple(1 if j == c else 0 for j in range(dim))
        up = tuple(1 if j == ray else 0 for j in range(dim))
        polys.append(TropicalPolynomial(dim, [(sq, 0), (lin, 0), ((0,) * dim, 1), (up, 1)]))
    polys.extend(clause_polynomial(dim, pos, neg) for pos, neg in clause_data)
    var_coord, aux = _base_maps(cnf, n_total)
    return Encoding("consistency", tuple(polys), dim, var_coord, aux, ray)


def encode_connectivity(cnf: CnfFormula) -> Encoding:
    """Always-nonempty cubic system: the models at level 0 plus one anchor
    point at ``(2, ..., 2)``; connected exactly when the formula has no
    model."""
    if cnf.n_vars < 1:
        raise ValueError("encoding needs at least one variable")
    n_total, clause_data = _rewrite_three_positive(cnf)
    dim = n_total + 1
    ray = n_total
    anchor_gate = _binomial(dim, ray, 2)  # 0.x_ray (+) 2
    polys = [
        # level selector: x_ray in {0, 2}
        trop_mul(_binomial(dim, ray, 0), anchor_gate),
        zero_one_two_surface(dim, ray),
    ]
    for c in range(n_total):
        polys.append(zero_one_two_surface(dim, c))
        # at level 0 pin x_c to {0,1}; released at level 2
        polys.append(trop_product([
            _binomial(dim, c, 1), _binomial(dim, c, 0), anchor_gate,
        ]))
        # at level 2 pin x_c to 2; released at level 0
        polys.append(trop_mul(_binomial(dim, c, 2), _binomial(dim, ray, 0)))
    polys.extend(
        trop_mul(clause_polynomial(dim, pos, neg), anchor_gate)
        for pos, neg in clause_data
    )
    var_coord, aux = _base_maps(cnf, n_total)
    return Encoding("connectivity", tuple(polys), dim, var_coord, aux, ray)


_ENCODERS = {
    "intersection": encode_intersection,
    "consistency": encode_consistency,
    "connectivity": encode_connectivity,
}


def encode(cnf: CnfFormula, variant: str) -> Encoding:
    try:
        encoder = _ENCODERS[variant]
    except KeyError:
        raise ValueError(f"unknown variant {variant!r}") from None
    return encoder(cnf)


def encoding_to_text(enc: Encoding) -> str:
    """System file text with a comment block mapping coordinates to
    variables; parses back via the system parser (comments are skipped)."""
    lines = [f"# variant: {enc.variant}", f"# coordinates: {enc.dimension}"]
    for v in sorted(enc.var_coord):
        lines.append(f"# coordinate {enc.var_coord[v]}: variable {v}")
    for i, c in enumerate(enc.aux_coords, start=1):
        lines.append(f"# coordinate {c}: auxiliary {i}")
    if enc.ray_coord is not None:
        lines.append(f"# coordinate {enc.ray_coord}: level")
    blocks = [polynomial_to_text(f) for f in enc.polynomials]
    return "\n".join(lines) + "\n" + "\n---\n".join(blocks) + "\n"
