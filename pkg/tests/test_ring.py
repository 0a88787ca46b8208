import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from thompson_ore import monoid as M
from thompson_ore.fields import IndeterminateField, PrimeField, Rationals
from thompson_ore.ring import (Polynomial, PolynomialParseError, format_poly, homogeneous_components,
                               left_divide_poly, parse_poly, poly_from_json, poly_mul, poly_to_json,
                               random_poly, shift_poly, width)

Q = Rationals()
F = PrimeField(101)

mono = st.lists(st.integers(0, 4), max_size=3).map(M.normalize)
polys = st.dictionaries(mono, st.integers(-3, 3), max_size=4).map(
    lambda d: Polynomial(Q, {w: Fraction(c) for w, c in d.items()}))


def as_dict(p):
    return dict(p.terms)


@given(polys, polys)
def test_mul_matches_oracle(p, q):
    assert as_dict(poly_mul(p, q)) == oracles.poly_mul(as_dict(p), as_dict(q))


@settings(max_examples=50)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r
    assert p - p == Polynomial.zero(Q)
    assert p * Polynomial.one(Q) == p == Polynomial.one(Q) * p


@given(polys)
def test_text_round_trip(p):
    assert parse_poly(format_poly(p), Q) == p


@given(polys)
def test_json_round_trip(p):
    assert poly_from_json(poly_to_json(p)) == p


def test_noncommutative():
    x0, x1 = Polynomial.monomial(Q, (0,)), Polynomial.monomial(Q, (1,))
    assert x1 * x0 == Polynomial.monomial(Q, (0, 2))
    assert x0 * x1 != x1 * x0


def test_parse_features():
    p = parse_poly("(x0 + 2*x1)*(x0 - x2) + 1/2", Q)
    assert format_poly(p) == "1/2 + x0^2 + x0*x2 - 2*x1*x2"
    assert parse_poly("x1*x0", Q) == parse_poly("x0*x2", Q)
    assert parse_poly("-x0^2", Q).coefficient((0, 0)) == -1
    assert parse_poly("0", Q) == Polynomial.zero(Q)


def test_parse_indeterminates():
    g = IndeterminateField(seed=4)
    p = parse_poly("a*x0 + b^2", g)
    assert p.coefficient((0,)) == g.symbol("a")
    assert p.coefficient(()) == g.mul(g.symbol("b"), g.symbol("b"))
    with pytest.raises(PolynomialParseError):
        parse_poly("a*x0", Q)


@pytest.mark.parametrize("text,pos", [("x0 +", 4), ("x0 * * x1", 5), ("(x0", 3), ("x0 @", 3)])
def test_parse_error_positions(text, pos):
    with pytest.raises(PolynomialParseError) as err:
        parse_poly(text, Q)
    assert err.value.position == pos


def test_degree_width_components():
    p = parse_poly("1 + x0*x1 + x3^3", Q)
    assert (p.degree, p.min_degree, width(p)) == (3, 0, 3)
    assert [d for d, _ in homogeneous_components(p)] == [0, 2, 3]
    assert parse_poly("x0 + x1", Q).is_homogeneous()
    assert not p.is_homogeneous()


def test_shift():
    p = parse_poly("x0 + 2*x1*x2", Q)
    assert shift_poly(p, 2) == parse_poly("x2 + 2*x3*x4", Q)
    assert shift_poly(shift_poly(p, 2), -2) == p


def test_prime_field_coefficients():
    p = parse_poly("100*x0 + 1/2", F)
    assert p.coefficient((0,)) == 100
    assert p.coefficient(()) == 51
    assert format_poly(p) == "-50 - x0"


def test_left_divide():
    a = parse_poly("x0 + x1", Q)
    c = parse_poly("x2 - 3*x0", Q)
    assert left_divide_poly(a, a * c) == c
    assert left_divide_poly(a, parse_poly("x0", Q)) is None


def test_random_poly_is_seeded_and_full():
    d = M.CatalanSet(2, 4)
    p = random_poly(d, F, 3)
    assert p == random_poly(d, F, 3)
    assert sorted(p.terms) == M.enumerate_set(d)


def test_field_mismatch():
    with pytest.raises(Exception):
        Polynomial.one(Q) + Polynomial.one(F)
