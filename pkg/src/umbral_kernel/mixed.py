"""Poly-Cauchy / Peters mixed-type polynomials ``CP_n^(k)(x; lam, mu)`` and the hat family.

Two independent constructions are provided:

* the generating functions (ground truth)::

      (1 + (1+t)^lam)^-mu  Lif_k( log(1+t)) (1+t)^-x = sum CP_n  t^n/n!
      (1 + (1+t)^lam)^-mu  Lif_k(-log(1+t)) (1+t)^x  = sum CP^_n t^n/n!

* the Sheffer pairs ``((1+e^{-lam t})^mu / Lif_k(-t), e^{-t} - 1)`` and
  ``((1+e^{lam t})^mu / Lif_k(-t), e^t - 1)`` fed through :mod:`umbral`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .polynomial import Polynomial
from .rational import ZERO, RationalLike, rat, rat_binomial, to_text
from .sequences import (
    GFRecipe,
    composition_multinomial_sum,
    gf_expand,
    lif_of_log,
    lif_series,
    peters_base_series,
)
from .series import Series, exp_series, one, ps_mul, ps_pow, ps_reciprocal
from .umbral import ShefferPair


@dataclass(frozen=True)
class MixedParams:
    k: int
    lam: Fraction
    mu: int

    def __post_init__(self):
        object.__setattr__(self, "lam", rat(self.lam))
        if not isinstance(self.k, int) or not isinstance(self.mu, int):
            raise TypeError("k and mu must be integers")

    def replace(self, **changes) -> MixedParams:
        fields = {"k": self.k, "lam": self.lam, "mu": self.mu}
        fields.update(changes)
        return MixedParams(**fields)

    def to_json(self) -> dict:
        return {"k": self.k, "lambda": to_text(self.lam), "mu": self.mu}


@lru_cache(maxsize=None)
def _cp_table(k: int, lam: Fraction, mu: int, n_max: int, hat: bool) -> tuple[Polynomial, ...]:
    sign = -1 if hat else 1
    prefactor = ps_mul(peters_base_series(lam, mu, n_max), lif_of_log(k, n_max, sign))
    return tuple(gf_expand(GFRecipe.binomial(prefactor, -sign), n_max))


def cp_oracle(params: MixedParams, n_max: int) -> list[Polynomial]:
    return list(_cp_table(params.k, params.lam, params.mu, n_max, False))


def cphat_oracle(params: MixedParams, n_max: int) -> list[Polynomial]:
    return list(_cp_table(params.k, params.lam, params.mu, n_max, True))


def cp_table(params: MixedParams, n_max: int, hat: bool = False) -> tuple[Polynomial, ...]:
    """Cached tuple form of the oracle, for hot loops."""
    return _cp_table(params.k, params.lam, params.mu, n_max, hat)


def lif_neg_t(k: int, order: int) -> Series:
    """``Lif_k(-t)``."""
    s = lif_series(k, order)
    return Series(order, tuple(c if i % 2 == 0 else -c for i, c in enumerate(s.coeffs)))


def _g_series(params: MixedParams, order: int, sign: int) -> Series:
    one_plus_exp = one(order) + exp_series(order, sign * params.lam)
    return ps_mul(ps_pow(one_plus_exp, params.mu), ps_reciprocal(lif_neg_t(params.k, order)))


def cp_sheffer_pair(params: MixedParams, order: int) -> ShefferPair:
    return ShefferPair(_g_series(params, order, -1), exp_series(order, -1) - one(order))


def cphat_sheffer_pair(params: MixedParams, order: int) -> ShefferPair:
    return ShefferPair(_g_series(params, order, 1), exp_series(order) - one(order))


def one_plus_exp_pow_explicit(lam: RationalLike, mu: int, order: int, sign: int = -1) -> Series:
    """``(1 + e^{sign lam t})^mu`` from the composition/multinomial triple sum.

    ``sum_i sum_j 2^(mu-i) C(mu, i) sum_{j_1+..+j_i=j} multinomial(j+i; j_1+1, ..) (sign lam t)^(j+i)/(j+i)!``
    """
    lam = rat(lam)
    out = [ZERO] * (order + 1)
    for i in range(order + 1):
        coef = Fraction(2) ** (mu - i) * rat_binomial(mu, i)
        if not coef:
            continue
        for d in range(i, order + 1):
            out[d] += coef * composition_multinomial_sum(i, d) * (sign * lam) ** d / math.factorial(d)
    return Series(order, tuple(out))
