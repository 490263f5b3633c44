"""Exact rational scalars and the combinatorial helpers built on them.

``Rational`` is :class:`fractions.Fraction`, which already keeps a reduced
numerator/denominator pair with a positive denominator.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` text to a Fraction.

    Floats are refused: no value in this package may pass through binary
    floating point.
    """
    if isinstance(value, float):
        raise TypeError("floating-point input is not allowed; use 'p/q' text")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def to_text(value: Fraction) -> str:
    # Fraction.__str__ already omits a unit denominator.
    return str(value)


def parse_text(text: str) -> Fraction:
    text = text.strip()
    if not text or any(c in text for c in ".eE"):
        raise ValueError(f"not a canonical rational: {text!r}")
    return Fraction(text)


def rat_binomial(alpha: RationalLike, n: int) -> Fraction:
    """Generalized binomial coefficient alpha*(alpha-1)*...*(alpha-n+1)/n!."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    alpha = rat(alpha)
    result = ONE
    for i in range(n):
        result = result * (alpha - i) / (i + 1)
    return result


def multinomial(total: int, parts: Iterable[int]) -> Fraction:
    parts = list(parts)
    if sum(parts) != total:
        raise ValueError(f"parts {parts} do not sum to {total}")
    if any(p < 0 for p in parts):
        raise ValueError("parts must be nonnegative")
    denom = 1
    for p in parts:
        denom *= math.factorial(p)
    return Fraction(math.factorial(total), denom)


def falling_factorial_scalar(x: RationalLike, n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = rat(x)
    result = ONE
    for i in range(n):
        result *= x - i
    return result


def factorial(n: int) -> Fraction:
    return Fraction(math.factorial(n))


def binomial(n: int, k: int) -> Fraction:
    """Binomial coefficient for integer ``n`` (possibly negative), ``k >= 0``.

    Returns 0 for ``k < 0``.
    """
    if k < 0:
        return ZERO
    return rat_binomial(n, k)
