import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from umbral_kernel.rational import (
    binomial,
    falling_factorial_scalar,
    multinomial,
    parse_text,
    rat,
    rat_binomial,
    to_text,
)

from conftest import rationals


@pytest.mark.parametrize("alpha, n, expected", [
    (Fraction(1, 2), 2, Fraction(-1, 8)),
    (Fraction(7, 3), 0, 1),
    (3, 2, 3),
])
def test_rat_binomial_values(alpha, n, expected):
    assert rat_binomial(alpha, n) == expected


def test_rat_binomial_rejects_negative_n():
    with pytest.raises(ValueError):
        rat_binomial(2, -1)


@pytest.mark.parametrize("total, parts, expected", [(4, [2, 2], 6), (0, [], 1), (3, [1, 2], 3)])
def test_multinomial_values(total, parts, expected):
    assert multinomial(total, parts) == expected


def test_multinomial_rejects_bad_sum():
    with pytest.raises(ValueError):
        multinomial(5, [2, 2])


@pytest.mark.parametrize("x, n, expected", [(5, 2, 20), (Fraction(3, 7), 0, 1),
                                            (Fraction(1, 2), 2, Fraction(-1, 4))])
def test_falling_factorial_values(x, n, expected):
    assert falling_factorial_scalar(x, n) == expected


@given(rationals(max_num=40, max_den=9), st.integers(min_value=0, max_value=20))
def test_binomial_times_factorial_is_falling_factorial(alpha, n):
    assert rat_binomial(alpha, n) * math.factorial(n) == falling_factorial_scalar(alpha, n)


@given(rationals(max_num=40, max_den=9), st.integers(min_value=1, max_value=20))
def test_pascal_recurrence(alpha, n):
    assert rat_binomial(alpha, n) == rat_binomial(alpha - 1, n) + rat_binomial(alpha - 1, n - 1)


@given(rationals(), rationals(), rationals())
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(rationals(max_num=10**6, max_den=10**6))
def test_text_round_trip(a):
    text = to_text(a)
    assert parse_text(text) == a
    if a.denominator == 1:
        assert "/" not in text


def test_canonical_text():
    assert to_text(Fraction(4, -6)) == "-2/3"
    assert to_text(Fraction(6, 3)) == "2"


@pytest.mark.parametrize("bad", ["0.5", "1e3", "", "x"])
def test_parse_rejects_non_rational_text(bad):
    with pytest.raises(ValueError):
        parse_text(bad)


def test_floats_refused():
    with pytest.raises(TypeError):
        rat(0.5)


def test_integer_binomial_conventions():
    assert binomial(5, 2) == 10
    assert binomial(3, -1) == 0
    assert binomial(3, 4) == 0
    assert binomial(-2, 3) == rat_binomial(-2, 3)
