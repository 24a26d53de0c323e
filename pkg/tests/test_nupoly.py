"""Exact univariate polynomial arithmetic over the rationals."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rookalg.nupoly import NuPoly, format_rational, parse_rational


def test_trailing_zeros_are_stripped():
    assert NuPoly((1, 2, 0, 0)) == NuPoly((1, 2))
    assert NuPoly((0,)) == NuPoly.zero()
    assert NuPoly(()).is_zero()


def test_constructors():
    assert NuPoly.zero().coeffs == ()
    assert NuPoly.one().coeffs == (Fraction(1),)
    assert NuPoly.nu().coeffs == (Fraction(0), Fraction(1))
    assert NuPoly.monomial(3).coeffs == (0, 0, 0, 1)
    assert NuPoly.constant(Fraction(2, 3)).coeffs == (Fraction(2, 3),)


def test_degree_and_leading():
    p = NuPoly((5, 0, -3))
    assert p.degree == 2
    assert p.leading == Fraction(-3)
    assert NuPoly.zero().degree == float("-inf")
    assert NuPoly.one().degree == 0


def test_ring_operations():
    p = NuPoly((1, 1))   # nu + 1
    q = NuPoly((-1, 1))  # nu - 1
    assert p * q == NuPoly((-1, 0, 1))
    assert p + q == NuPoly((0, 2))
    assert p - q == NuPoly((2,))
    assert -p == NuPoly((-1, -1))
    assert p * NuPoly.zero() == NuPoly.zero()
    assert p * NuPoly.one() == p


def test_evaluate_exact():
    p = NuPoly((1, -2, 1))  # (nu - 1)^2
    assert p.evaluate(1) == 0
    assert p.evaluate(4) == 9
    assert p.evaluate(Fraction(1, 2)) == Fraction(1, 4)
    assert isinstance(p.evaluate(3), Fraction)


@pytest.mark.parametrize(
    "coeffs,text",
    [
        ((0,), "0"),
        ((1,), "1"),
        ((Fraction(1, 2),), "1/2"),
        ((0, 1), "nu"),
        ((-1, 1), "nu - 1"),
        ((1, -2, 1), "nu^2 - 2*nu + 1"),
    ],
)
def test_pretty(coeffs, text):
    assert NuPoly(coeffs).pretty() == text


def test_string_roundtrip():
    p = NuPoly((Fraction(1, 3), -2, 0, 5))
    assert NuPoly.from_strings(p.to_strings()) == p
    assert p.to_strings() == ["1/3", "-2/1", "0/1", "5/1"]


def test_rational_parsing():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-2") == Fraction(-2)
    assert format_rational(Fraction(5)) == "5/1"
    assert format_rational(Fraction(-1, 3)) == "-1/3"


small_polys = st.lists(
    st.fractions(min_value=-20, max_value=20, max_denominator=8),
    min_size=0,
    max_size=4,
).map(lambda cs: NuPoly(tuple(cs)))


@given(small_polys, small_polys, st.integers(min_value=-5, max_value=5))
def test_evaluation_is_a_ring_homomorphism(p, q, v):
    assert (p + q).evaluate(v) == p.evaluate(v) + q.evaluate(v)
    assert (p * q).evaluate(v) == p.evaluate(v) * q.evaluate(v)


@given(small_polys, small_polys)
def test_product_degree(p, q):
    if not p.is_zero() and not q.is_zero():
        assert (p * q).degree == p.degree + q.degree
        assert (p * q).leading == p.leading * q.leading
