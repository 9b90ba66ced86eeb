from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import binom_falling, poly_mul
from prinparts.exact import GF, QQ, Ring, binom, is_prime, series_coeff


@pytest.mark.parametrize("a,b,expected", [(5, 2, 10), (3, 5, 0), (4, -1, 0), (-2, 1, -2), (0, 0, 1), (-1, 3, -1)])
def test_binom_examples(a, b, expected):
    assert binom(a, b) == expected


@given(st.integers(-30, 30), st.integers(-5, 12))
def test_binom_matches_falling_factorial(a, b):
    assert binom(a, b) == binom_falling(a, b)


@given(st.integers(-30, 30), st.integers(1, 12))
def test_pascal(a, b):
    assert binom(a, b) == binom(a - 1, b - 1) + binom(a - 1, b)


def test_series_coeff_examples():
    assert series_coeff(-2, 1) == -2
    assert series_coeff(3, 2) == 3
    assert series_coeff(-1, 3) == -1
    with pytest.raises(ValueError):
        series_coeff(2, -1)


def test_series_coeff_negative_one_inverts_one_plus_x():
    # (1 + x) * (1 - x + x^2 - x^3) = 1 - x^4
    inv = [series_coeff(-1, i) for i in range(4)]
    assert inv == [1, -1, 1, -1]
    assert poly_mul([1, 1], inv) == [1, 0, 0, 0, -1]


@pytest.mark.parametrize("m", range(-6, 7))
def test_series_of_m_and_minus_m_convolve_to_delta(m):
    k = 8
    for i in range(k + 1):
        conv = sum(series_coeff(m, j) * series_coeff(-m, i - j) for j in range(i + 1))
        assert conv == (1 if i == 0 else 0)


@pytest.mark.parametrize("m", range(0, 7))
def test_series_coeff_nonnegative_matches_expansion(m):
    poly = [1]
    for _ in range(m):
        poly = poly_mul(poly, [1, 1])
    assert [series_coeff(m, i) for i in range(m + 3)] == poly + [0, 0]


def test_is_prime():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(9973) and not is_prime(9971)


def test_ring_construction_rejects_composites():
    with pytest.raises(ValueError):
        Ring(4)
    assert GF(5) is GF(5)
    assert Ring.parse("GF(7)") == GF(7) and Ring.parse("QQ") == QQ
    assert str(GF(3)) == "GF(3)"


fractions = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)


@given(fractions, fractions, fractions)
def test_rationals_field_round_trip(a, b, c):
    a, b, c = QQ(a), QQ(b), QQ(c)
    assert (a + b) - b == a
    assert a * (b + c) == a * b + a * c
    if b != 0:
        assert QQ.div(a * b, b) == a
        assert b * QQ.inv(b) == 1
    x = a / 1
    assert x.denominator >= 1 and x == Fraction(x.numerator, x.denominator)


@given(st.integers(-100, 100), st.integers(1, 100))
def test_prime_field_inverse(a, b):
    f = GF(7)
    if b % 7:
        assert f(f.div(a, b) * b) == f(a)
    assert f(Fraction(a, 1)) == a % 7
