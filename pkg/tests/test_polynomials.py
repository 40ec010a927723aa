"""Min-plus polynomials: evaluation, membership, semiring ops, text format."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from minplus.errors import DimensionMismatch, FormatError
from minplus.polynomials import (
    TropicalPolynomial,
    parse_polynomial,
    parse_system,
    polynomial_to_text,
    system_to_text,
    trop_add,
    trop_mul,
    trop_product,
)


def random_poly(rng: random.Random, dim: int, max_deg: int = 3,
                n_terms: int | None = None) -> TropicalPolynomial:
    terms = {}
    for _ in range(n_terms or rng.randint(1, 6)):
        exp = tuple(rng.randint(0, max_deg) for _ in range(dim))
        while sum(exp) > max_deg:
            exp = tuple(rng.randint(0, max_deg) for _ in range(dim))
        coeff = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
        prev = terms.get(exp)
        terms[exp] = coeff if prev is None else min(prev, coeff)
    return TropicalPolynomial(dim, terms.items())


def random_point(rng: random.Random, dim: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(dim))


def brute_eval(f: TropicalPolynomial, x) -> tuple[Fraction, int]:
    values = [m.coefficient + sum(e * v for e, v in zip(m.exponent, x))
              for m in f.monomials]
    best = min(values)
    return best, values.count(best)


def test_evaluate_matches_direct_minimum():
    rng = random.Random(201)
    for _ in range(200):
        dim = rng.randint(1, 4)
        f = random_poly(rng, dim)
        x = random_point(rng, dim)
        value, tight = f.evaluate(x)
        b_value, b_count = brute_eval(f, x)
        assert value == b_value
        assert len(tight) == b_count


def test_membership_means_minimum_attained_twice():
    rng = random.Random(202)
    for _ in range(300):
        dim = rng.randint(1, 3)
        f = random_poly(rng, dim)
        x = random_point(rng, dim)
        _, count = brute_eval(f, x)
        assert f.is_member(x) == (count >= 2)


def test_hand_evaluation():
    # min(0 + 2x, 0 + x, 1)
    f = TropicalPolynomial(1, [((2,), 0), ((1,), 0), ((0,), 1)])
    assert f.evaluate((Fraction(0),))[0] == 0
    assert f.is_member((Fraction(0),))       # 2x and x tie at 0
    assert f.is_member((Fraction(1),))       # x and 1 tie at 1
    assert not f.is_member((Fraction(1, 2),))
    assert f.degree() == 2


def test_duplicate_exponents_are_rejected():
    with pytest.raises(ValueError):
        TropicalPolynomial(1, [((1,), 5), ((1,), 2)])
    # merging with min is the job of trop_add
    f = trop_add(TropicalPolynomial(1, [((1,), 5)]),
                 TropicalPolynomial(1, [((1,), 2)]))
    assert f.coefficient((1,)) == 2


def test_trop_add_is_pointwise_min():
    rng = random.Random(203)
    for _ in range(150):
        dim = rng.randint(1, 3)
        f, g = random_poly(rng, dim), random_poly(rng, dim)
        s = trop_add(f, g)
        x = random_point(rng, dim)
        assert s.evaluate(x)[0] == min(f.evaluate(x)[0], g.evaluate(x)[0])
    assert set(trop_add(f, g).support) == set(f.support) | set(g.support)


def test_trop_mul_adds_values():
    rng = random.Random(204)
    for _ in range(150):
        dim = rng.randint(1, 3)
        f, g = random_poly(rng, dim), random_poly(rng, dim)
        p = trop_mul(f, g)
        x = random_point(rng, dim)
        assert p.evaluate(x)[0] == f.evaluate(x)[0] + g.evaluate(x)[0]
        assert p.degree() == f.degree() + g.degree()


def test_trop_product_folds():
    rng = random.Random(205)
    fs = [random_poly(rng, 2) for _ in range(4)]
    p = trop_product(fs)
    x = random_point(rng, 2)
    assert p.evaluate(x)[0] == sum(f.evaluate(x)[0] for f in fs)


def test_mul_distributes_over_add():
    rng = random.Random(206)
    for _ in range(60):
        f, g, h = (random_poly(rng, 2) for _ in range(3))
        left = trop_mul(f, trop_add(g, h))
        right = trop_add(trop_mul(f, g), trop_mul(f, h))
        x = random_point(rng, 2)
        assert left.evaluate(x)[0] == right.evaluate(x)[0]


def test_dimension_mismatch_is_rejected():
    f = TropicalPolynomial(1, [((1,), 0)])
    g = TropicalPolynomial(2, [((1, 0), 0)])
    with pytest.raises(DimensionMismatch):
        trop_add(f, g)
    with pytest.raises(DimensionMismatch):
        trop_mul(f, g)
    with pytest.raises(DimensionMismatch):
        f.evaluate((Fraction(0), Fraction(0)))


def test_text_round_trip():
    rng = random.Random(207)
    for _ in range(60):
        dim = rng.randint(1, 4)
        fs = [random_poly(rng, dim) for _ in range(rng.randint(1, 4))]
        again = parse_system(system_to_text(fs))
        assert again == fs


def test_parse_accepts_comments_and_integer_shorthand():
    text = """
    # a tropical line
    0 : 1 0   # the x term
    0 : 0 1
    -3/2 : 0 0
    """
    f = parse_polynomial(text)
    assert f.dimension == 2
    assert f.coefficient((0, 0)) == Fraction(-3, 2)


def test_parse_separator_splits_polynomials():
    fs = parse_system("0 : 1\n---\n1 : 0\n2 : 1")
    assert len(fs) == 2
    assert fs[0].dimension == 1


def test_parse_errors_carry_line_numbers():
    with pytest.raises(FormatError) as err:
        parse_system("0 : 1 0\nbroken line\n")
    assert "line 2" in str(err.value)
    with pytest.raises(FormatError):
        parse_system("0 : 1 0\n0 : 1\n")  # width change mid-polynomial
    with pytest.raises(FormatError):
        parse_system("0 : 1 -2\n")  # negative exponent
    with pytest.raises(FormatError):
        parse_system("")


def test_polynomial_text_is_canonical():
    f = TropicalPolynomial(2, [((0, 1), 1), ((1, 0), 0)])
    g = TropicalPolynomial(2, [((1, 0), 0), ((0, 1), 1)])
    assert polynomial_to_text(f) == polynomial_to_text(g)


def test_constant_and_linear_constructors():
    c = TropicalPolynomial.constant(3, Fraction(7))
    assert c.degree() == 0
    assert c.evaluate((Fraction(1), Fraction(2), Fraction(3)))[0] == 7
    lin = TropicalPolynomial.linear_term(2, 1, Fraction(1, 2))
    assert lin.evaluate((Fraction(0), Fraction(4)))[0] == Fraction(9, 2)


def test_immutability():
    f = TropicalPolynomial(1, [((1,), 0)])
    with pytest.raises(AttributeError):
        f.dimension = 5
