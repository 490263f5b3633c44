"""Umbral calculus over truncated series: functionals, operators, Sheffer sequences.

A series ``f(t) = sum c_k t^k`` is read both as a linear functional,
``<f | x^n> = n! c_n``, and as an operator on polynomials,
``t^k x^n = (n)_k x^(n-k)`` (``t`` acts as d/dx).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .polynomial import Polynomial, poly_sum
from .rational import ZERO, RationalLike, binomial, rat
from .sequences import GFRecipe, gf_expand
from .series import (
    Series,
    one,
    ps_comp_inverse,
    ps_compose,
    ps_derivative,
    ps_mul,
    ps_pow,
    ps_reciprocal,
    ps_shift_down,
)


ORDER_ENV = "UMBRAL_KERNEL_ORDER"


class UmbralError(ValueError):
    pass


def working_order(n_max: int) -> int:
    """Truncation order for a degree-``n_max`` computation: ``n_max + 2``.

    The ``UMBRAL_KERNEL_ORDER`` environment variable may raise it, never lower it.
    """
    order = n_max + 2
    raw = os.environ.get(ORDER_ENV)
    if raw:
        try:
            order = max(order, int(raw))
        except ValueError:
            raise UmbralError(f"{ORDER_ENV} must be an integer, got {raw!r}") from None
    return order


@dataclass(frozen=True)
class LinearFunctional:
    series: Series

    @property
    def order(self) -> int:
        return self.series.order

    def __call__(self, p: Polynomial) -> Fraction:
        return pair(self, p)


def pair(f: LinearFunctional | Series, p: Polynomial) -> Fraction:
    """``<f(t) | p(x)>``."""
    s = f.series if isinstance(f, LinearFunctional) else f
    if p.degree > s.order:
        raise UmbralError(
            f"degree {p.degree} exceeds functional order {s.order}; raise the truncation")
    return sum((c * math.factorial(n) * s.coeffs[n] for n, c in enumerate(p.coeffs)), ZERO)


def apply_series(f: Series, p: Polynomial) -> Polynomial:
    """The operator ``f(t)`` applied to ``p``: ``sum_k c_k p^(k)(x)``."""
    if p.degree > f.order:
        raise UmbralError(f"degree {p.degree} exceeds series order {f.order}")
    out = []
    deriv = p
    for k in range(p.degree + 1):
        c = f.coeffs[k]
        if c:
            out.append(deriv * c)
        deriv = deriv.derivative()
    return poly_sum(out)


@dataclass(frozen=True)
class ShefferPair:
    """``(g, f)`` with ``g`` invertible and ``f`` a delta series."""

    g: Series
    f: Series

    def __post_init__(self):
        if self.g.order != self.f.order:
            raise UmbralError("g and f must share a truncation order")
        if not self.g.is_invertible:
            raise UmbralError("g must be invertible (g(0) != 0)")
        if not self.f.is_delta:
            raise UmbralError("f must be a delta series (f(0) = 0, f'(0) != 0)")

    @property
    def order(self) -> int:
        return self.f.order

    @classmethod
    def associated(cls, f: Series) -> ShefferPair:
        return cls(one(f.order), f)


@lru_cache(maxsize=256)
def _fbar(f: Series) -> Series:
    return ps_comp_inverse(f)


@lru_cache(maxsize=256)
def _inv_g_of_fbar(p: ShefferPair) -> Series:
    return ps_reciprocal(ps_compose(p.g, _fbar(p.f)))


def _check_n(p: ShefferPair, n: int) -> None:
    if n > p.order - 1:
        raise UmbralError(f"n = {n} needs series order >= {n + 1}, have {p.order}")


@lru_cache(maxsize=256)
def _sheffer_table(p: ShefferPair, n_max: int) -> tuple[Polynomial, ...]:
    return tuple(gf_expand(GFRecipe(_inv_g_of_fbar(p), _fbar(p.f)), n_max))


def sheffer_polys(p: ShefferPair, n_max: int) -> list[Polynomial]:
    """``s_0 .. s_{n_max}`` from ``(1/g(fbar(t))) exp(x fbar(t))``."""
    _check_n(p, n_max)
    return list(_sheffer_table(p, n_max))


def sheffer_coeff_formula(p: ShefferPair, n: int) -> Polynomial:
    """``s_n`` one coefficient at a time: ``[x^j] s_n = <fbar^j / g(fbar) | x^n> / j!``."""
    _check_n(p, n)
    fbar = _fbar(p.f)
    term = _inv_g_of_fbar(p)
    xn = Polynomial.monomial(n)
    coeffs = []
    for j in range(n + 1):
        if j:
            term = ps_mul(term, fbar)
        coeffs.append(pair(term, xn) / math.factorial(j))
    return Polynomial(coeffs)


def sheffer_lowering(p: ShefferPair, n: int) -> Polynomial:
    """``f(t) s_n``, which should equal ``n s_{n-1}``."""
    if n < 1:
        raise UmbralError("lowering needs n >= 1")
    return apply_series(p.f, sheffer_polys(p, n)[n])


def raising_step(p: ShefferPair, s_n: Polynomial) -> Polynomial:
    """``(x - g'(t)/g(t)) (1/f'(t)) s_n``."""
    if s_n.degree + 2 > p.order:
        raise UmbralError("raising needs series order >= n + 2")
    u = apply_series(ps_reciprocal(ps_derivative(p.f)), s_n)
    log_deriv = ps_mul(ps_derivative(p.g), ps_pow(p.g, -1))
    return u.mul_x() - apply_series(log_deriv, u)


def sheffer_raising(p: ShefferPair, n: int) -> Polynomial:
    return raising_step(p, sheffer_polys(p, n)[n])


def sheffer_derivative(p: ShefferPair, n: int) -> Polynomial:
    """``sum_{l<n} C(n, l) <fbar | x^(n-l)> s_l``."""
    polys = sheffer_polys(p, n)
    fbar = _fbar(p.f)
    return poly_sum(
        polys[l] * (binomial(n, l) * math.factorial(n - l) * fbar.coeffs[n - l])
        for l in range(n))


def binomial_expand(p: ShefferPair, n: int, y: RationalLike) -> Polynomial:
    """``sum_j C(n, j) s_j(x) P_{n-j}(y)`` where ``P_m = g(t) s_m``."""
    y = rat(y)
    polys = sheffer_polys(p, n)
    return poly_sum(
        polys[j] * (binomial(n, j) * apply_series(p.g, polys[n - j])(y))
        for j in range(n + 1))


def transfer(f: Series, g: Series, n: int) -> Polynomial:
    """The ``(1, g)``-associated ``q_n`` from the ``(1, f)``-associated ``p_n``.

    ``q_n = x (f/g)^n x^-1 p_n``.
    """
    if n < 1:
        raise UmbralError("transfer formula needs n >= 1")
    if f.order < n + 1:
        raise UmbralError(f"series order must be >= {n + 1}")
    p_n = sheffer_polys(ShefferPair.associated(f), n)[n]
    if p_n[0] != 0:
        raise UmbralError("associated sequence has p_n(0) != 0; invariant violated")
    ratio = ps_mul(ps_shift_down(f), ps_reciprocal(ps_shift_down(g)))
    return apply_series(ps_pow(ratio, n), p_n.div_x()).mul_x()


def connection_constants(source: ShefferPair, target: ShefferPair, n: int) -> list[Fraction]:
    """Row ``C_{n,0} .. C_{n,n}`` with ``s_n = sum_m C_{n,m} r_m``.

    ``C_{n,m} = <h(fbar)/g(fbar) * l(fbar)^m | x^n> / m!`` for
    ``s ~ (g, f)`` and ``r ~ (h, l)``.
    """
    _check_n(source, n)
    if source.order != target.order:
        raise UmbralError("pairs must share a truncation order")
    fbar = _fbar(source.f)
    base = ps_mul(ps_compose(target.g, fbar), _inv_g_of_fbar(source))
    l_of_fbar = ps_compose(target.f, fbar)
    xn = Polynomial.monomial(n)
    row = []
    term = base
    for m in range(n + 1):
        if m:
            term = ps_mul(term, l_of_fbar)
        row.append(pair(term, xn) / math.factorial(m))
    return row


def connection_matrix(source: ShefferPair, target: ShefferPair, n_max: int) -> list[list[Fraction]]:
    return [connection_constants(source, target, n) for n in range(n_max + 1)]


def functional_xp_check(f: Series, p: Polynomial) -> tuple[Fraction, Fraction]:
    """Both sides of ``<f | x p(x)> = <f'(t) | p(x)>``."""
    if p.degree + 1 > f.order:
        raise UmbralError("series order too small for x p(x)")
    return pair(f, p.mul_x()), pair(ps_derivative(f), p)


def orthogonality(p: ShefferPair, n: int, k: int) -> Fraction:
    """``<g f^k | s_n>``; equals ``n!`` when ``n == k`` and 0 otherwise."""
    s_n = sheffer_polys(p, n)[n]
    return pair(ps_mul(p.g, ps_pow(p.f, k)), s_n)
