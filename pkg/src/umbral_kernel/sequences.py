"""Classical polynomial families, each expanded from its generating function.

Every family here has a generating function of the shape
``A(t) * exp(x * K(t))`` with ``K(0) = 0``; the binomial families use
``K(t) = +-log(1 + t)`` so that ``exp(x K) = (1 + t)^(+-x)``.
:func:`gf_expand` turns such a pair into the polynomials ``p_n(x)`` with
``sum p_n(x) t^n / n! = A(t) exp(x K(t))``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .polynomial import Polynomial
from .rational import ONE, ZERO, RationalLike, rat, rat_binomial
from .series import (
    Series,
    SeriesError,
    constant,
    exp_series,
    log1p_series,
    one,
    one_plus_t_pow,
    ps_compose,
    ps_mul,
    ps_pow,
    ps_reciprocal,
    variable,
)


@dataclass(frozen=True)
class GFRecipe:
    """``prefactor(t) * exp(x * kernel(t))``."""

    prefactor: Series
    kernel: Series

    def __post_init__(self):
        if self.prefactor.order != self.kernel.order:
            raise SeriesError("prefactor and kernel orders differ")
        if self.kernel.coeffs[0] != 0:
            raise SeriesError("kernel must vanish at t = 0")

    @classmethod
    def binomial(cls, prefactor: Series, sign: int = 1) -> GFRecipe:
        """``prefactor(t) * (1 + t)^(sign * x)``."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return cls(prefactor, log1p_series(prefactor.order).scale(sign))

    @classmethod
    def exponential(cls, prefactor: Series) -> GFRecipe:
        """``prefactor(t) * e^(x t)``."""
        return cls(prefactor, variable(prefactor.order))


def gf_expand(recipe: GFRecipe, n_max: int) -> list[Polynomial]:
    """Polynomials ``p_0 .. p_{n_max}`` of the recipe's exponential generating function."""
    order = recipe.prefactor.order
    if n_max > order:
        raise SeriesError(f"recipe order {order} too small for n = {n_max}")
    # coeffs[n][j] = n! / j! * [t^n] (A K^j)
    coeffs = [[ZERO] * (n + 1) for n in range(n_max + 1)]
    term = recipe.prefactor
    j_fact = 1
    for j in range(n_max + 1):
        if j:
            term = ps_mul(term, recipe.kernel)
            j_fact *= j
        for n in range(j, n_max + 1):
            c = term.coeffs[n]
            if c:
                coeffs[n][j] = c * math.factorial(n) / j_fact
    return [Polynomial(row) for row in coeffs]


# -- Stirling numbers of the first kind ------------------------------------

_stirling_rows: list[list[int]] = [[1]]
_stirling_lock = threading.Lock()


def stirling1(n: int, m: int) -> int:
    """Signed Stirling number of the first kind; 0 outside ``0 <= m <= n``."""
    if n < 0 or m < 0 or m > n:
        return 0
    if n >= len(_stirling_rows):
        with _stirling_lock:
            while len(_stirling_rows) <= n:
                prev = _stirling_rows[-1]
                k = len(_stirling_rows) - 1
                # S1(k+1, m) = S1(k, m-1) - k S1(k, m)
                row = [0] * (k + 2)
                for j in range(k + 2):
                    left = prev[j - 1] if j >= 1 else 0
                    right = prev[j] if j <= k else 0
                    row[j] = left - k * right
                _stirling_rows.append(row)
    return _stirling_rows[n][m]


def falling_poly(n: int) -> Polynomial:
    return Polynomial(stirling1(n, l) for l in range(n + 1))


def rising_poly(n: int) -> Polynomial:
    return Polynomial(stirling1(n, l) * (-1) ** (n - l) for l in range(n + 1))


# -- generating-function ingredients ---------------------------------------

def lif_series(k: int, order: int) -> Series:
    """``Lif_k(t) = sum t^n / (n! (n+1)^k)``."""
    return Series(order, tuple(
        Fraction(1, math.factorial(n)) * Fraction(n + 1) ** (-k) for n in range(order + 1)))


@lru_cache(maxsize=None)
def lif_of_log(k: int, order: int, sign: int = 1) -> Series:
    """``Lif_k(sign * log(1 + t))``."""
    return ps_compose(lif_series(k, order), log1p_series(order).scale(sign))


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def composition_binomial_sum(lam: Fraction, parts: int, total: int) -> Fraction:
    """``sum over r_1+..+r_parts = total of C(lam, r_1+1) ... C(lam, r_parts+1)``."""
    acc = ZERO
    for comp in compositions(total, parts):
        prod = ONE
        for r in comp:
            prod *= rat_binomial(lam, r + 1)
        acc += prod
    return acc


@lru_cache(maxsize=None)
def composition_multinomial_sum(parts: int, total: int) -> Fraction:
    """``sum over j_1+..+j_parts = total - parts of multinomial(total; j_1+1, .., j_parts+1)``.

    Zero when ``total < parts``.
    """
    if total < parts:
        return ZERO
    acc = 0
    top = math.factorial(total)
    for comp in compositions(total - parts, parts):
        d = 1
        for j in comp:
            d *= math.factorial(j + 1)
        acc += top // d
    return Fraction(acc)


@lru_cache(maxsize=None)
def peters_base_series(lam: Fraction, mu: int, order: int) -> Series:
    """``(1 + (1 + t)^lam)^(-mu)`` by an integer power of the series."""
    base = one(order) + one_plus_t_pow(lam, order)
    return ps_pow(base, -mu)


def peters_base_series_explicit(lam: RationalLike, mu: int, order: int) -> Series:
    """The same series from the explicit triple sum over compositions.

    ``sum_i sum_j 2^-(mu+i) C(-mu, i) [sum over compositions of j] prod C(lam, j_l+1) t^(j+i)``.
    Independent of the power-series power routine; used as its oracle.
    """
    lam = rat(lam)
    out = [ZERO] * (order + 1)
    for i in range(order + 1):
        coef = Fraction(1, 2) ** (mu + i) * rat_binomial(-mu, i)
        if not coef:
            continue
        for j in range(order - i + 1):
            out[j + i] += coef * composition_binomial_sum(lam, i, j)
    return Series(order, tuple(out))


# -- families ----------------------------------------------------------------

def _table(recipe: GFRecipe, n_max: int) -> tuple[Polynomial, ...]:
    return tuple(gf_expand(recipe, n_max))


@lru_cache(maxsize=None)
def peters_polys(lam: Fraction, mu: int, n_max: int) -> tuple[Polynomial, ...]:
    """``S_n(x; lam, mu)`` for ``n <= n_max``; GF ``(1+(1+t)^lam)^-mu (1+t)^x``."""
    return _table(GFRecipe.binomial(peters_base_series(rat(lam), mu, n_max), 1), n_max)


def peters_poly(lam: RationalLike, mu: int, n: int) -> Polynomial:
    return peters_polys(rat(lam), mu, n)[n]


def boole_poly(lam: RationalLike, n: int) -> Polynomial:
    return peters_poly(lam, 1, n)


def changhee_poly(n: int) -> Polynomial:
    return peters_poly(1, 1, n)


@lru_cache(maxsize=None)
def poly_cauchy1_polys(k: int, n_max: int) -> tuple[Polynomial, ...]:
    """``C_n^(k)(x)``: GF ``Lif_k(log(1+t)) (1+t)^-x``."""
    return _table(GFRecipe.binomial(lif_of_log(k, n_max, 1), -1), n_max)


@lru_cache(maxsize=None)
def poly_cauchy2_polys(k: int, n_max: int) -> tuple[Polynomial, ...]:
    """``C^_n^(k)(x)``: GF ``Lif_k(-log(1+t)) (1+t)^x``."""
    return _table(GFRecipe.binomial(lif_of_log(k, n_max, -1), 1), n_max)


def poly_cauchy1(k: int, n: int) -> Polynomial:
    return poly_cauchy1_polys(k, n)[n]


def poly_cauchy2(k: int, n: int) -> Polynomial:
    return poly_cauchy2_polys(k, n)[n]


def bernoulli_kernel(order: int) -> Series:
    """``t / (e^t - 1)``."""
    # (e^t - 1)/t has coefficients 1/(i+1)!
    return ps_reciprocal(Series(order, tuple(
        Fraction(1, math.factorial(i + 1)) for i in range(order + 1))))


@lru_cache(maxsize=None)
def bernoulli_polys(alpha: int, n_max: int) -> tuple[Polynomial, ...]:
    if alpha < 0:
        raise ValueError("order must be nonnegative")
    return _table(GFRecipe.exponential(ps_pow(bernoulli_kernel(n_max), alpha)), n_max)


def bernoulli_poly(alpha: int, n: int) -> Polynomial:
    return bernoulli_polys(alpha, n)[n]


@lru_cache(maxsize=None)
def frobenius_euler_polys(alpha: int, fe_lambda: Fraction, n_max: int) -> tuple[Polynomial, ...]:
    """``H_n^(alpha)(x | lambda)``: GF ``((1-lambda)/(e^t-lambda))^alpha e^(xt)``."""
    fe_lambda = rat(fe_lambda)
    if fe_lambda == 1:
        raise ValueError("Frobenius-Euler parameter must differ from 1")
    if alpha < 0:
        raise ValueError("order must be nonnegative")
    denom = exp_series(n_max) - constant(fe_lambda, n_max)
    kernel = ps_reciprocal(denom).scale(1 - fe_lambda)
    return _table(GFRecipe.exponential(ps_pow(kernel, alpha)), n_max)


def frobenius_euler_poly(alpha: int, fe_lambda: RationalLike, n: int) -> Polynomial:
    return frobenius_euler_polys(alpha, rat(fe_lambda), n)[n]


def _log_over_t(order: int) -> Series:
    """``log(1+t)/t``."""
    return Series(order, tuple(Fraction((-1) ** i, i + 1) for i in range(order + 1)))


@lru_cache(maxsize=None)
def cauchy1_polys(alpha: int, n_max: int) -> tuple[Polynomial, ...]:
    """``C_n^(alpha)(x)``: GF ``(t/log(1+t))^alpha (1+t)^-x``."""
    kernel = ps_reciprocal(_log_over_t(n_max))
    return _table(GFRecipe.binomial(ps_pow(kernel, alpha), -1), n_max)


@lru_cache(maxsize=None)
def cauchy2_polys(alpha: int, n_max: int) -> tuple[Polynomial, ...]:
    """``C^_n^(alpha)(x)``: GF ``(t/((1+t)log(1+t)))^alpha (1+t)^x``."""
    kernel = ps_reciprocal(ps_mul(_log_over_t(n_max), one_plus_t_pow(1, n_max)))
    return _table(GFRecipe.binomial(ps_pow(kernel, alpha), 1), n_max)


def cauchy1_poly(alpha: int, n: int) -> Polynomial:
    return cauchy1_polys(alpha, n)[n]


def cauchy2_poly(alpha: int, n: int) -> Polynomial:
    return cauchy2_polys(alpha, n)[n]
