"""CNF gadgets: clause polynomials, DIMACS parsing, the three encoders.

The parsimony workhorse: on 0/1 points, membership in a clause polynomial's
hypersurface must coincide with the clause's truth value. Every encoder test
reduces to that plus the structural-surface fixtures.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from minplus.errors import FormatError
from minplus.gadgets import (
    CnfFormula,
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
from minplus.polynomials import parse_system
from minplus.topology import analyze, intersect_nonempty

F = Fraction


def naive_count(n_vars: int, clauses) -> int:
    """Truth-table model count, written independently of the package."""
    total = 0
    for bits in itertools.product((False, True), repeat=n_vars):
        ok = True
        for clause in clauses:
            if not any(bits[v - 1] if v > 0 else not bits[-v - 1] for v in clause):
                ok = False
                break
        if ok:
            total += 1
    return total


def test_cnf_normalization():
    cnf = CnfFormula(3, [(1, 1, 2), (2, 1)])
    assert cnf.clauses[0] == (1, 2)
    cnf = CnfFormula(2, [(1, -1)])       # tautology vanishes
    assert cnf.clauses == ()
    with pytest.raises(ValueError):
        CnfFormula(4, [(1, 2, 3, 4)])    # four distinct literals
    with pytest.raises(ValueError):
        CnfFormula(2, [(3,)])            # out of range
    with pytest.raises(ValueError):
        CnfFormula(2, [(0,)])
    empty = CnfFormula(2, [()])          # empty clause is legal and unsatisfiable
    assert brute_force_count(empty) == 0


def test_brute_force_fixed_counts():
    assert brute_force_count(CnfFormula(1, [(1,), (-1,)])) == 0
    assert brute_force_count(CnfFormula(2, [(1, 2)])) == 3
    assert brute_force_count(CnfFormula(3, [])) == 8


def test_brute_force_matches_naive_oracle():
    rng = random.Random(701)
    for _ in range(80):
        n = rng.randint(1, 6)
        clauses = []
        for _ in range(rng.randint(0, 8)):
            size = rng.randint(1, min(3, n))
            vs = rng.sample(range(1, n + 1), size)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
        cnf = CnfFormula(n, clauses)
        assert brute_force_count(cnf) == naive_count(n, clauses)


def test_brute_force_guard():
    with pytest.raises(ValueError):
        brute_force_count(CnfFormula(25, []))


def test_parse_dimacs_happy_path():
    text = """c example
p cnf 3 2
1 -2 0
2 3 0
"""
    cnf = parse_dimacs(text)
    assert cnf.n_vars == 3
    assert cnf.clauses == ((1, -2), (2, 3))


def test_parse_dimacs_tolerates_percent_and_missing_zero():
    text = "p cnf 2 2\n1 0\n-1 2\n%\ntrailing junk ignored\n"
    cnf = parse_dimacs(text)
    assert cnf.clauses == ((1,), (-1, 2))


def test_parse_dimacs_errors():
    with pytest.raises(FormatError):
        parse_dimacs("1 2 0\n")  # missing header
    with pytest.raises(FormatError) as err:
        parse_dimacs("p cnf 2 1\n1 x 0\n")
    assert "line 2" in str(err.value)
    with pytest.raises(FormatError):
        parse_dimacs("p cnf 2 3\n1 0\n")  # declared three clauses, gave one


def test_structural_surfaces():
    h = zero_one_surface(1, 0)
    assert [x for x in range(-3, 5) if h.is_member((F(x),))] == [0, 1]
    assert not h.is_member((F(1, 2),))
    hh = zero_one_two_surface(1, 0)
    assert [x for x in range(-3, 6) if hh.is_member((F(x),))] == [0, 1, 2]
    assert not hh.is_member((F(3, 2),))
    assert hh.degree() == 3
    rep = analyze([hh])
    assert rep.points == ((F(0),), (F(1),), (F(2),))


def test_clause_polynomial_matches_truth_on_01_points():
    """The parsimony lemma, checked exhaustively for every clause shape with
    at most two positive literals over up to 4 variables."""
    dim = 4
    shapes = []
    for n_pos in (0, 1, 2):
        for n_neg in (0, 1, 2, 3):
            if n_pos + n_neg == 0 or n_pos + n_neg > 3:
                continue
            if n_pos == 2 and n_neg > 1:
                continue  # covered forms stop at two positives + one negative
            shapes.append((n_pos, n_neg))
    for n_pos, n_neg in shapes:
        vars_ = list(range(dim))
        for chosen in itertools.permutations(vars_, n_pos + n_neg):
            pos, neg = list(chosen[:n_pos]), list(chosen[n_pos:])
            poly = clause_polynomial(dim, pos, neg)
            for bits in itertools.product((0, 1), repeat=dim):
                x = tuple(F(b) for b in bits)
                truth = any(bits[j] for j in pos) or any(not bits[j] for j in neg)
                assert poly.is_member(x) == truth, (pos, neg, bits)


def test_clause_polynomial_empty_clause_is_unsatisfiable():
    poly = clause_polynomial(2, [], [])
    for bits in itertools.product((0, 1), repeat=2):
        assert not poly.is_member((F(bits[0]), F(bits[1])))


def test_clause_polynomial_degrees():
    assert clause_polynomial(3, [0], [1]).degree() <= 2
    assert clause_polynomial(3, [0, 1], [2]).degree() == 2
    assert clause_polynomial(3, [0, 1], []).degree() == 2
    with pytest.raises(ValueError):
        clause_polynomial(3, [0, 1, 2], [])  # three positives need the rewrite


def test_two_positive_one_negative_shape():
    poly = clause_polynomial(3, [0, 1], [2])
    assert len(poly.monomials) == 6
    assert poly.degree() == 2


def test_encode_intersection_points_are_models():
    cnf = CnfFormula(3, [(1, 2), (-1, 3)])
    enc = encode_intersection(cnf)
    assert enc.dimension == 3
    assert max(f.degree() for f in enc.polynomials) <= 2
    rep = analyze(enc.polynomials)
    models = {
        bits
        for bits in itertools.product((0, 1), repeat=3)
        if (bits[0] or bits[1]) and ((not bits[0]) or bits[2])
    }
    assert {tuple(int(c) for c in p) for p in rep.points} == models
    assert rep.component_count == len(models) == brute_force_count(cnf)


def test_encode_intersection_unsat_is_empty():
    cnf = CnfFormula(2, [(1,), (-1,), (2,)])
    enc = encode_intersection(cnf)
    assert intersect_nonempty(enc.polynomials) is None


def test_three_positive_rewrite_is_parsimonious():
    cnf = CnfFormula(3, [(1, 2, 3)])
    enc = encode_intersection(cnf)
    assert enc.dimension == 4          # one auxiliary coordinate
    assert enc.aux_coords == (3,)
    rep = analyze(enc.polynomials)
    assert rep.component_count == 7    # 2^3 - 1 models, one point each
    # projections to the original coordinates are exactly the models
    models = {p[:3] for p in rep.points}
    assert len(models) == 7


def test_encode_consistency_geometry():
    cnf = CnfFormula(2, [(1, 2)])
    enc = encode_consistency(cnf)
    assert enc.ray_coord == 2
    assert max(f.degree() for f in enc.polynomials) <= 2
    rep = analyze(enc.polynomials)
    assert rep.component_count == 3    # one ray per model
    assert rep.dimension == 1
    assert not rep.finite
    # the all-ones model admits levels from 0 upward: (1,1,5) is a member
    assert all(f.is_member((F(1), F(1), F(5))) for f in enc.polynomials)
    # but below the base level it is not
    assert not all(f.is_member((F(1), F(1), F(-1))) for f in enc.polynomials)


def test_encode_consistency_all_zero_ray_starts_lower():
    # the all-zero assignment satisfies (-1 or -2); its ray starts at -1
    cnf = CnfFormula(2, [(-1, -2)])
    enc = encode_consistency(cnf)
    zero_ray_base = (F(0), F(0), F(-1))
    assert all(f.is_member(zero_ray_base) for f in enc.polynomials)
    below = (F(0), F(0), F(-2))
    assert not all(f.is_member(below) for f in enc.polynomials)


def test_encode_consistency_unsat_is_empty():
    cnf = CnfFormula(1, [(1,), (-1,)])
    enc = encode_consistency(cnf)
    assert intersect_nonempty(enc.polynomials) is None


def test_encode_connectivity_counts_models_plus_anchor():
    cnf = CnfFormula(2, [(1, 2)])
    enc = encode_connectivity(cnf)
    assert enc.ray_coord == 2
    assert max(f.degree() for f in enc.polynomials) <= 3
    rep = analyze(enc.polynomials)
    assert rep.component_count == brute_force_count(cnf) + 1
    assert rep.finite
    anchor = tuple(F(2) for _ in range(3))
    assert anchor in rep.points


def test_encode_connectivity_unsat_is_single_point():
    cnf = CnfFormula(2, [(1,), (-1,)])
    enc = encode_connectivity(cnf)
    rep = analyze(enc.polynomials)
    assert rep.component_count == 1
    assert rep.points == (tuple(F(2) for _ in range(3)),)


def test_encode_dispatch_and_variant_validation():
    cnf = CnfFormula(1, [(1,)])
    assert encode(cnf, "intersection").variant == "intersection"
    assert encode(cnf, "consistency").variant == "consistency"
    assert encode(cnf, "connectivity").variant == "connectivity"
    with pytest.raises(ValueError):
        encode(cnf, "nonsense")


def test_encoding_text_round_trips_through_the_parser():
    cnf = CnfFormula(3, [(1, -2), (2, 3), (1, 2, 3)])
    for variant in ("intersection", "consistency", "connectivity"):
        enc = encode(cnf, variant)
        text = encoding_to_text(enc)
        assert f"# variant: {variant}" in text
        again = parse_system(text)
        assert again == list(enc.polynomials)


def test_coordinate_comments_name_all_coordinates():
    cnf = CnfFormula(2, [(1, 2)])
    text = encoding_to_text(encode(cnf, "connectivity"))
    assert "# coordinate 0: variable 1" in text
    assert "# coordinate 1: variable 2" in text
    assert "# coordinate 2: level" in text
