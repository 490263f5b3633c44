"""Registry of closed-form identities for the mixed-type polynomials.

Each identity is evaluated exactly: the left side comes from the
generating-function oracle (:mod:`mixed`), the right side from the closed form
as written.  Identities whose written form is known to carry a misprint also
register a corrected variant, so a failure can be resolved to a one-token fix
rather than left as a bare mismatch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Optional

from .mixed import MixedParams, cp_table
from .umbral import working_order
from .polynomial import X, Polynomial, poly_sum
from .rational import ZERO, binomial, falling_factorial_scalar, rat, rat_binomial, to_text
from .sequences import (
    bernoulli_polys,
    cauchy1_polys,
    cauchy2_polys,
    composition_binomial_sum,
    composition_multinomial_sum,
    falling_poly,
    frobenius_euler_polys,
    peters_polys,
    poly_cauchy1_polys,
    poly_cauchy2_polys,
    rising_poly,
    stirling1,
)

HALF = Fraction(1, 2)


class UsageError(ValueError):
    """Out-of-range n, parameters or auxiliary values for an identity."""


# -- number helpers --------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli_number(order: int, n: int) -> Fraction:
    return bernoulli_polys(order, n)[n][0]


@lru_cache(maxsize=None)
def cauchy1_number(order: int, n: int) -> Fraction:
    return cauchy1_polys(order, n)[n][0]


@lru_cache(maxsize=None)
def cauchy2_number(order: int, n: int) -> Fraction:
    return cauchy2_polys(order, n)[n][0]


def _inv_pow(base: int, k: int) -> Fraction:
    """``1 / base^k`` for any integer ``k``."""
    return Fraction(base) ** (-k)


class _Ctx:
    """Oracle tables for one parameter point at a fixed table order."""

    def __init__(self, params: MixedParams, order: int):
        self.p = params
        self.order = order

    @property
    def k(self):
        return self.p.k

    @property
    def lam(self):
        return self.p.lam

    @property
    def mu(self):
        return self.p.mu

    def cp(self, n: int, hat: bool = False, **changes) -> Polynomial:
        params = self.p.replace(**changes) if changes else self.p
        return cp_table(params, self.order, hat)[n]

    def peters(self, n: int) -> Polynomial:
        return peters_polys(self.lam, self.mu, self.order)[n]

    def pc1(self, n: int) -> Polynomial:
        return poly_cauchy1_polys(self.k, self.order)[n]

    def pc2(self, n: int) -> Polynomial:
        return poly_cauchy2_polys(self.k, self.order)[n]

    def two_mu(self) -> Fraction:
        return HALF ** self.mu


Sides = tuple[Any, Any]
SideFn = Callable[[_Ctx, int, dict], Sides]


# -- convolution identities ---------------------------------------------------

def _t1(c: _Ctx, n, aux):
    rhs = poly_sum(c.pc1(l) * (binomial(n, l) * c.peters(n - l)(0)) for l in range(n + 1))
    return c.cp(n), rhs


def _t2(c: _Ctx, n, aux):
    rhs = poly_sum(c.peters(l).reflect() * (binomial(n, l) * c.pc1(n - l)(0)) for l in range(n + 1))
    return c.cp(n), rhs


def _r34(c: _Ctx, n, aux):
    rhs = poly_sum(c.pc2(l) * (binomial(n, l) * c.peters(n - l)(0)) for l in range(n + 1))
    return c.cp(n, hat=True), rhs


def _r35(c: _Ctx, n, aux):
    rhs = poly_sum(c.peters(l) * (binomial(n, l) * c.pc2(n - l)(0)) for l in range(n + 1))
    return c.cp(n, hat=True), rhs


# -- explicit multi-index coefficient formulas ----------------------------------

def _t3_family(c: _Ctx, n, hat: bool):
    lam, mu, k = c.lam, c.mu, c.k
    coeffs = []
    for j in range(n + 1):
        inner = ZERO
        for m in range(n - j + 1):
            for l in range(n - j - m + 1):
                base = (Fraction(math.factorial(m + j), math.factorial(m) * math.factorial(l + m + j))
                        * _inv_pow(m + 1, k) * stirling1(l + m + j, m + j))
                if not base:
                    continue
                if hat:
                    base *= (-1) ** m
                for i in range(n - j - m - l + 1):
                    inner += (base * HALF ** i * rat_binomial(-mu, i)
                              * composition_binomial_sum(lam, i, n - j - m - l - i))
        sign = 1 if hat else (-1) ** j
        coeffs.append(c.two_mu() * math.factorial(n) * sign * inner / math.factorial(j))
    return Polynomial(coeffs)


def _t3(c: _Ctx, n, aux):
    return c.cp(n), _t3_family(c, n, hat=False)


def _r38(c: _Ctx, n, aux):
    return c.cp(n, hat=True), _t3_family(c, n, hat=True)


def _t4_family(c: _Ctx, n, hat: bool, bern_order: Callable[[int, int], int]):
    lam, mu, k = c.lam, c.mu, c.k
    coeffs = []
    for r in range(n + 1):
        acc = ZERO
        for l in range(n - r + 1):
            b_l = binomial(n - 1, l)
            if not b_l:
                continue
            for m in range(n - r - l + 1):
                d = n - r - l - m
                # lam^n (-lam^-1)^r lam^(-l-m) collapsed to one nonnegative power
                sign = (-1) ** m if hat else (-1) ** r
                base = (sign * lam ** d * _inv_pow(m + 1, k) * b_l * binomial(n - l, m)
                        * binomial(n - l - m, r) * bernoulli_number(bern_order(n, m), l))
                if not base:
                    continue
                for i in range(d + 1):
                    acc += base * HALF ** i * rat_binomial(-mu, i) * composition_multinomial_sum(i, d)
        coeffs.append(c.two_mu() * acc)
    return Polynomial(coeffs)


def _t4(c: _Ctx, n, aux):
    return c.cp(n), _t4_family(c, n, False, lambda n, m: n)


def _r43_printed(c: _Ctx, n, aux):
    return c.cp(n, hat=True), _t4_family(c, n, True, lambda n, m: m)


def _r43_fixed(c: _Ctx, n, aux):
    return c.cp(n, hat=True), _t4_family(c, n, True, lambda n, m: n)


def _t5_family(c: _Ctx, n, hat: bool):
    lam, mu, k = c.lam, c.mu, c.k
    coeffs = []
    for r in range(n + 1):
        acc = ZERO
        for l in range(r, n + 1):
            s1 = stirling1(n, l)
            if not s1:
                continue
            for m in range(l - r + 1):
                d = l - m - r
                sign = (-1) ** m if hat else (-1) ** r
                base = (sign * lam ** d * _inv_pow(m + 1, k) * binomial(l, m)
                        * binomial(l - m, r) * s1)
                for i in range(d + 1):
                    acc += base * HALF ** i * rat_binomial(-mu, i) * composition_multinomial_sum(i, d)
        coeffs.append(c.two_mu() * acc)
    return Polynomial(coeffs)


def _t5(c: _Ctx, n, aux):
    return c.cp(n), _t5_family(c, n, False)


def _r51(c: _Ctx, n, aux):
    return c.cp(n, hat=True), _t5_family(c, n, True)


def _t6(c: _Ctx, n, aux):
    rhs = Polynomial(
        (-1) ** j * sum((binomial(n, m) * stirling1(n - m, j) * c.cp(m)(0) for m in range(n + 1)), ZERO)
        for j in range(n + 1))
    return c.cp(n), rhs


def _r54(c: _Ctx, n, aux, fixed: bool):
    def num(m):
        return c.cp(m if fixed else n, hat=True)(0)
    rhs = Polynomial(
        sum((binomial(n, m) * stirling1(n - m, j) * num(m) for m in range(n + 1)), ZERO)
        for j in range(n + 1))
    return c.cp(n, hat=True), rhs


# -- addition, difference and recurrence formulas ----------------------------------

def _bivariate_shift(p: Polynomial) -> dict:
    """``p(x + y)`` as ``{(i, j): coeff of x^i y^j}``."""
    out: dict = {}
    for d, c in enumerate(p.coeffs):
        for a in range(d + 1):
            key = (a, d - a)
            out[key] = out.get(key, ZERO) + c * binomial(d, a)
    return {key: v for key, v in out.items() if v}


def _bivariate_sum(terms) -> dict:
    out: dict = {}
    for px, py, scale in terms:
        for i, a in enumerate(px.coeffs):
            for j, b in enumerate(py.coeffs):
                if a and b:
                    out[(i, j)] = out.get((i, j), ZERO) + scale * a * b
    return {key: v for key, v in out.items() if v}


def _add_family(c: _Ctx, n, aux, hat: bool):
    y = aux.get("y")
    def y_poly(j):
        return falling_poly(j) if hat else rising_poly(j) * (-1) ** j
    if y is None:
        lhs = _bivariate_shift(c.cp(n, hat=hat))
        rhs = _bivariate_sum((c.cp(n - j, hat=hat), y_poly(j), binomial(n, j)) for j in range(n + 1))
        return lhs, rhs
    y = rat(y)
    rhs = poly_sum(c.cp(n - j, hat=hat) * (binomial(n, j) * y_poly(j)(y)) for j in range(n + 1))
    return c.cp(n, hat=hat).shift(y), rhs


def _add55(c, n, aux):
    return _add_family(c, n, aux, hat=False)


def _add56(c, n, aux):
    return _add_family(c, n, aux, hat=True)


def _t7(c: _Ctx, n, aux):
    p = c.cp(n)
    rhs = c.cp(n - 1) * n if n else Polynomial()
    return p.shift(-1) - p, rhs


def _r59(c: _Ctx, n, aux):
    p = c.cp(n, hat=True)
    rhs = c.cp(n - 1, hat=True) * n if n else Polynomial()
    return p.shift(1) - p, rhs


def _rec_family(c: _Ctx, n, hat: bool):
    mu, k = c.mu, c.k
    lhs = c.cp(n + 1, hat=hat)
    shift = -1 if hat else 1
    first = (c.cp(n, hat=hat).shift(shift) * X) * (1 if hat else -1)
    second = poly_sum(
        c.cp(n - m, hat=hat) * (mu * (-HALF) ** (m + 1) * falling_factorial_scalar(n, m))
        for m in range(n + 1))
    terms = []
    for r in range(n + 1):
        acc = ZERO
        for m in range(r, n + 1):
            s1 = stirling1(n, m)
            if not s1:
                continue
            for l in range(r, m + 1):
                base = _inv_pow(m - l + 2, k) * binomial(m, l) * binomial(l, r) * s1
                if hat:
                    base *= (-1) ** (m - l)
                for i in range(l - r + 1):
                    acc += base * HALF ** i * rat_binomial(-mu, i) * composition_multinomial_sum(i, l - r)
        sign = -1 if hat else (-1) ** r
        terms.append(Polynomial.monomial(r).shift(shift) * (sign * c.two_mu() * acc))
    return lhs, first + second + poly_sum(terms)


def _rec60(c, n, aux):
    return _rec_family(c, n, hat=False)


def _rec61(c, n, aux):
    return _rec_family(c, n, hat=True)


def _t8_family(c: _Ctx, n, hat: bool):
    lam, mu, k = c.lam, c.mu, c.k
    if hat:
        first = c.cp(n - 1, hat=True, mu=mu + 1).shift(lam - 1) * (-mu * lam)
        second = c.cp(n - 1, hat=True).shift(-1) * X
    else:
        first = c.cp(n - 1, mu=mu + 1).shift(1 - lam) * (-mu * lam)
        second = -(c.cp(n - 1).shift(1) * X)
    third = poly_sum(
        (c.cp(l + 1, hat=hat, k=k - 1) - c.cp(l + 1, hat=hat))
        * (binomial(n, l + 1) * cauchy2_number(1, n - 1 - l) / n)
        for l in range(n))
    return c.cp(n, hat=hat), first + second + third


def _t8(c, n, aux):
    return _t8_family(c, n, hat=False)


def _r64(c, n, aux):
    return _t8_family(c, n, hat=True)


def _d_family(c: _Ctx, n, hat: bool):
    p = c.cp(n, hat=hat)
    extra = 1 if hat else 0
    rhs = poly_sum(
        c.cp(l, hat=hat) * Fraction(math.factorial(n) * (-1) ** (n - l - extra), (n - l) * math.factorial(l))
        for l in range(n))
    return p.derivative(), rhs


def _d65(c, n, aux):
    return _d_family(c, n, hat=False)


def _d66(c, n, aux):
    return _d_family(c, n, hat=True)


# -- scalar identities in (n, m) --------------------------------------------------

def _t9_family(c: _Ctx, n, aux, hat: bool, last_arg: int):
    """Vectors indexed by m (entry 0 unused) of both sides."""
    lam, mu, k = c.lam, c.mu, c.k
    ms = [aux["m"]] if aux.get("m") is not None else list(range(1, n))
    for m in ms:
        if not 1 <= m <= n - 1:
            raise UsageError(f"m = {m} outside 1..{n - 1}")
    lhs = [ZERO] * n
    rhs = [ZERO] * n
    shifted_arg = lam - 1 if hat else 1 - lam
    unit_arg = -1 if hat else 1
    for m in ms:
        lhs[m] = m * sum((binomial(n, l) * stirling1(n - l, m) * c.cp(l, hat=hat)(0)
                          for l in range(n - m + 1)), ZERO)
        a = -mu * lam * m * sum((binomial(n - 1, l) * stirling1(n - 1 - l, m)
                                 * c.cp(l, hat=hat, mu=mu + 1)(shifted_arg)
                                 for l in range(n - m)), ZERO)
        b = sum((binomial(n - 1, l) * stirling1(n - 1 - l, m - 1)
                 * c.cp(l, hat=hat, k=k - 1)(unit_arg) for l in range(n - m + 1)), ZERO)
        d = (m - 1) * sum((binomial(n - 1, l) * stirling1(n - 1 - l, m - 1)
                           * c.cp(l, hat=hat)(last_arg) for l in range(n - m + 1)), ZERO)
        rhs[m] = a + b + d
    return lhs, rhs


def _t9(c, n, aux):
    return _t9_family(c, n, aux, hat=True, last_arg=-1)


def _r9_printed(c, n, aux):
    return _t9_family(c, n, aux, hat=False, last_arg=-1)


def _r9_fixed(c, n, aux):
    return _t9_family(c, n, aux, hat=False, last_arg=1)


# -- expansions over other Sheffer bases -------------------------------------------

def _s_of(aux) -> int:
    s = aux.get("s")
    if s is None or int(s) != s or s < 0:
        raise UsageError("this identity needs a nonnegative integer auxiliary order s")
    return int(s)


def _t10_family(c: _Ctx, n, aux, hat: bool, basis_index: Callable[[int, int], int]):
    s = _s_of(aux)
    bern = bernoulli_polys(s, c.order)
    number = cauchy2_number if hat else cauchy1_number
    terms = []
    for m in range(n + 1):
        acc = ZERO
        for l in range(n - m + 1):
            s1 = stirling1(n - l, m)
            if not s1:
                continue
            for i in range(l + 1):
                acc += (binomial(n, l) * binomial(l, i) * s1 * number(s, i)
                        * c.cp(l - i, hat=hat)(s))
        sign = 1 if hat else (-1) ** m
        terms.append(bern[basis_index(n, m)] * (sign * acc))
    return c.cp(n, hat=hat), poly_sum(terms)


def _t10_printed(c, n, aux):
    return _t10_family(c, n, aux, False, lambda n, m: n)


def _t10_fixed(c, n, aux):
    return _t10_family(c, n, aux, False, lambda n, m: m)


def _r73(c, n, aux):
    return _t10_family(c, n, aux, True, lambda n, m: m)


def _t11_family(c: _Ctx, n, aux, hat: bool):
    s = _s_of(aux)
    lam = c.lam
    if lam == 1:
        raise UsageError("Frobenius-Euler expansion needs lambda != 1")
    fe = frobenius_euler_polys(s, lam, c.order)
    weight = 1 / (1 - lam) if hat else lam / (lam - 1)
    arg = 0 if hat else s
    terms = []
    for m in range(n + 1):
        acc = ZERO
        for l in range(n - m + 1):
            s1 = stirling1(n - l, m)
            if not s1:
                continue
            for i in range(min(s, l) + 1):
                acc += (binomial(n, l) * binomial(s, i) * falling_factorial_scalar(l, i)
                        * weight ** i * s1 * c.cp(l - i, hat=hat)(arg))
        sign = 1 if hat else (-1) ** m
        terms.append(fe[m] * (sign * acc))
    return c.cp(n, hat=hat), poly_sum(terms)


def _t11(c, n, aux):
    return _t11_family(c, n, aux, hat=False)


def _r11(c, n, aux):
    return _t11_family(c, n, aux, hat=True)


def _t12(c: _Ctx, n, aux):
    rhs = poly_sum(rising_poly(m) * ((-1) ** m * binomial(n, m) * c.cp(n - m)(0)) for m in range(n + 1))
    return c.cp(n), rhs


def _r78(c: _Ctx, n, aux):
    rhs = poly_sum(falling_poly(m) * (binomial(n, m) * c.cp(n - m, hat=True)(0)) for m in range(n + 1))
    return c.cp(n, hat=True), rhs


# -- registry ------------------------------------------------------------------

@dataclass(frozen=True)
class Variant:
    name: str
    note: str
    sides: SideFn


@dataclass(frozen=True)
class Identity:
    id: str
    title: str
    formula: str
    kind: str  # "poly" | "scalar" | "bivariate"
    suite: str  # "A" must hold as written, "B" may resolve to a correction
    printed: SideFn
    n_min: int = 0
    top_shift: int = 0  # the largest polynomial index used is n + top_shift
    aux: tuple[str, ...] = ()
    lam_rule: Optional[str] = None  # "eq1" or "ne1"
    corrections: tuple[Variant, ...] = field(default_factory=tuple)

    def n_range(self, n_max: int) -> range:
        return range(self.n_min, n_max - self.top_shift + 1)

    def variant(self, name: str) -> SideFn:
        if name == "printed":
            return self.printed
        for v in self.corrections:
            if v.name == name:
                return v.sides
        raise UsageError(f"{self.id} has no variant {name!r}")


def _id(id, title, formula, kind, suite, printed, **kw) -> Identity:
    return Identity(id, title, formula, kind, suite, printed, **kw)


_REGISTRY: tuple[Identity, ...] = (
    _id("T1", "CP as convolution of Peters numbers with poly-Cauchy polynomials",
        "CP_n(x) = sum_l C(n,l) S_{n-l}(0) C_l^(k)(x)", "poly", "A", _t1),
    _id("T2", "CP as convolution of poly-Cauchy numbers with Peters polynomials at -x",
        "CP_n(x) = sum_l C(n,l) C_{n-l}^(k) S_l(-x)", "poly", "A", _t2),
    _id("R34", "hat CP as convolution of Peters numbers with poly-Cauchy-2 polynomials",
        "CP^_n(x) = sum_l C(n,l) S_{n-l}(0) C^_l^(k)(x)", "poly", "A", _r34),
    _id("R35", "hat CP as convolution of poly-Cauchy-2 numbers with Peters polynomials",
        "CP^_n(x) = sum_l C(n,l) C^_{n-l}^(k) S_l(x)", "poly", "A", _r35),
    _id("T3", "explicit coefficients of CP via Stirling numbers and compositions",
        "CP_n(x) = 2^-mu n! sum_j (-1)^j/j! {sum_{m,l,i,r_1..r_i} 2^-i/(m!(m+1)^k) "
        "(m+j)!/(l+m+j)! C(-mu,i) prod C(lam,r_q+1) S1(l+m+j,m+j)} x^j", "poly", "B", _t3),
    _id("R38", "explicit coefficients of hat CP via Stirling numbers and compositions",
        "CP^_n(x) = 2^-mu n! sum_j 1/j! {sum 2^-i (-1)^m/(m!(m+1)^k) (m+j)!/(l+m+j)! "
        "C(-mu,i) prod C(lam,r_q+1) S1(l+m+j,m+j)} x^j", "poly", "B", _r38),
    _id("T4", "coefficients of CP from the transfer formula (higher-order Bernoulli numbers)",
        "CP_n(x) = lam^n/2^mu sum_r (-1/lam)^r {sum 2^-i lam^(-l-m)/(m+1)^k C(n-1,l) C(n-l,m) "
        "C(-mu,i) multinom(n-r-l-m; j_q+1) C(n-l-m,r) B_l^(n)} x^r", "poly", "B", _t4),
    _id("R43", "coefficients of hat CP from the transfer formula",
        "CP^_n(x) = lam^n/2^mu sum_r lam^-r {sum (-1)^m 2^-i lam^(-l-m)/(m+1)^k C(n-1,l) "
        "C(n-l,m) C(-mu,i) multinom(n-r-l-m; j_q+1) C(n-l-m,r) B_l^(m)} x^r", "poly", "B",
        _r43_printed,
        corrections=(Variant("corrected", "B_l^(m) -> B_l^(n)", _r43_fixed),)),
    _id("T5", "coefficients of CP from the Stirling expansion of (-x)_n",
        "CP_n(x) = 2^-mu sum_r (-1/lam)^r {sum_{l>=r} 2^-i lam^(l-m)/(m+1)^k C(l,m) C(-mu,i) "
        "multinom(l-m-r; j_q+1) C(l-m,r) S1(n,l)} x^r", "poly", "B", _t5),
    _id("R51", "coefficients of hat CP from the Stirling expansion of (x)_n",
        "CP^_n(x) = 2^-mu sum_r lam^-r {sum (-1)^m 2^-i lam^(l-m)/(m+1)^k C(l,m) C(-mu,i) "
        "multinom(l-m-r; j_q+1) C(l-m,r) S1(n,l)} x^r", "poly", "B", _r51),
    _id("T6", "coefficients of CP from the mixed-type numbers",
        "CP_n(x) = sum_j (-1)^j {sum_m C(n,m) S1(n-m,j) CP_m(0)} x^j", "poly", "A", _t6),
    _id("R54", "coefficients of hat CP from the mixed-type numbers",
        "CP^_n(x) = sum_j {sum_m C(n,m) S1(n-m,j) CP^_n(0)} x^j", "poly", "B",
        lambda c, n, aux: _r54(c, n, aux, False),
        corrections=(Variant("corrected", "CP^_n(0) -> CP^_m(0)",
                             lambda c, n, aux: _r54(c, n, aux, True)),)),
    _id("ADD55", "addition formula for CP over rising factorials",
        "CP_n(x+y) = sum_j (-1)^j C(n,j) CP_{n-j}(x) y^(j)", "bivariate", "A", _add55, aux=("y",)),
    _id("ADD56", "addition formula for hat CP over falling factorials",
        "CP^_n(x+y) = sum_j C(n,j) CP^_{n-j}(x) (y)_j", "bivariate", "A", _add56, aux=("y",)),
    _id("T7", "backward difference equation for CP",
        "CP_n(x-1) - CP_n(x) = n CP_{n-1}(x)", "poly", "A", _t7),
    _id("R59", "forward difference equation for hat CP",
        "CP^_n(x+1) - CP^_n(x) = n CP^_{n-1}(x)", "poly", "A", _r59),
    _id("REC60", "three-term recurrence for CP at lambda = 1",
        "CP_{n+1}(x;1,mu) = -x CP_n(x+1) + mu sum_m (-1/2)^(m+1) (n)_m CP_{n-m}(x) "
        "+ 2^-mu sum_r (-1)^r {sum 2^-i/(m-l+2)^k C(m,l) C(-mu,i) multinom(l-r; j_q+1) "
        "C(l,r) S1(n,m)} (x+1)^r", "poly", "B", _rec60, top_shift=1, lam_rule="eq1"),
    _id("REC61", "three-term recurrence for hat CP at lambda = 1",
        "CP^_{n+1}(x;1,mu) = x CP^_n(x-1) + mu sum_m (-1/2)^(m+1) (n)_m CP^_{n-m}(x) "
        "- 2^-mu sum_r {sum (-1)^(m-l) 2^-i/(m-l+2)^k C(m,l) C(-mu,i) multinom(l-r; j_q+1) "
        "C(l,r) S1(n,m)} (x-1)^r", "poly", "B", _rec61, top_shift=1, lam_rule="eq1"),
    _id("T8", "recurrence for CP mixing mu, mu+1 and k-1",
        "CP_n(x) = -mu lam CP_{n-1}(x-lam+1;lam,mu+1) - x CP_{n-1}(x+1) "
        "+ 1/n sum_l C(n,l+1) C^_{n-1-l} {CP_{l+1}^(k-1)(x) - CP_{l+1}^(k)(x)}",
        "poly", "B", _t8, n_min=1),
    _id("R64", "recurrence for hat CP mixing mu, mu+1 and k-1",
        "CP^_n(x) = -mu lam CP^_{n-1}(x+lam-1;lam,mu+1) + x CP^_{n-1}(x-1) "
        "+ 1/n sum_l C(n,l+1) C^_{n-1-l} {CP^_{l+1}^(k-1)(x) - CP^_{l+1}^(k)(x)}",
        "poly", "B", _r64, n_min=1),
    _id("D65", "x-derivative of CP",
        "d/dx CP_n(x) = n! sum_{l<n} (-1)^(n-l)/((n-l) l!) CP_l(x)", "poly", "A", _d65),
    _id("D66", "x-derivative of hat CP",
        "d/dx CP^_n(x) = n! sum_{l<n} (-1)^(n-l-1)/((n-l) l!) CP^_l(x)", "poly", "A", _d66),
    _id("T9", "scalar identity for hat CP numbers, 1 <= m <= n-1",
        "m sum_l C(n,l) S1(n-l,m) CP^_l(0) = -mu lam m sum_l C(n-1,l) S1(n-1-l,m) "
        "CP^_l(lam-1;lam,mu+1) + sum_l C(n-1,l) S1(n-1-l,m-1) CP^_l^(k-1)(-1) "
        "+ (m-1) sum_l C(n-1,l) S1(n-1-l,m-1) CP^_l^(k)(-1)", "scalar", "B", _t9, n_min=2),
    _id("R9", "scalar identity for CP numbers, 1 <= m <= n-1",
        "m sum_l C(n,l) S1(n-l,m) CP_l(0) = -mu lam m sum_l C(n-1,l) S1(n-1-l,m) "
        "CP_l(1-lam;lam,mu+1) + sum_l C(n-1,l) S1(n-1-l,m-1) CP_l^(k-1)(1) "
        "+ (m-1) sum_l C(n-1,l) S1(n-1-l,m-1) CP_l^(k)(-1)", "scalar", "B", _r9_printed, n_min=2,
        corrections=(Variant("corrected", "CP_l^(k)(-1) -> CP_l^(k)(1) in the last sum", _r9_fixed),)),
    _id("T10", "expansion of CP over Bernoulli polynomials of order s",
        "CP_n(x) = sum_m (-1)^m {sum_{l,i} C(n,l) C(l,i) S1(n-l,m) Cauchy1_i^(s) CP_{l-i}(s)} B_n^(s)(x)",
        "poly", "B", _t10_printed, aux=("s",),
        corrections=(Variant("corrected", "B_n^(s)(x) -> B_m^(s)(x)", _t10_fixed),)),
    _id("R73", "expansion of hat CP over Bernoulli polynomials of order s",
        "CP^_n(x) = sum_m {sum_{l,i} C(n,l) C(l,i) S1(n-l,m) Cauchy2_i^(s) CP^_{l-i}(s)} B_m^(s)(x)",
        "poly", "B", _r73, aux=("s",)),
    _id("T11", "expansion of CP over Frobenius-Euler polynomials of order s",
        "CP_n(x) = sum_m (-1)^m {sum_{l,i} C(n,l) C(s,i) (l)_i (lam/(lam-1))^i S1(n-l,m) "
        "CP_{l-i}(s)} H_m^(s)(x|lam)", "poly", "B", _t11, aux=("s",), lam_rule="ne1"),
    _id("R11", "expansion of hat CP over Frobenius-Euler polynomials of order s",
        "CP^_n(x) = sum_m {sum_{l,i} C(n,l) C(s,i) (l)_i (1/(1-lam))^i S1(n-l,m) "
        "CP^_{l-i}(0)} H_m^(s)(x|lam)", "poly", "B", _r11, aux=("s",), lam_rule="ne1"),
    _id("T12", "expansion of CP over rising factorials",
        "CP_n(x) = sum_m (-1)^m C(n,m) CP_{n-m}(0) x^(m)", "poly", "A", _t12),
    _id("R78", "expansion of hat CP over falling factorials",
        "CP^_n(x) = sum_m C(n,m) CP^_{n-m}(0) (x)_m", "poly", "A", _r78),
)

_BY_ID = {ident.id: ident for ident in _REGISTRY}

SUITE_A = tuple(i.id for i in _REGISTRY if i.suite == "A")
SUITE_B = tuple(i.id for i in _REGISTRY if i.suite == "B")


def identity_registry() -> list[Identity]:
    return list(_REGISTRY)


def get_identity(identity_id: str) -> Identity:
    try:
        return _BY_ID[identity_id]
    except KeyError:
        raise UsageError(f"unknown identity {identity_id!r}") from None


# -- evaluation ----------------------------------------------------------------

@dataclass
class IdentityReport:
    id: str
    params: MixedParams
    aux: dict
    n_min: int
    n_max: int
    status: str  # "verified" | "failed"
    variant: str = "printed"
    first_fail: Optional[dict] = None
    certificate: Optional[dict] = None

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def to_json(self) -> dict:
        out: dict = {
            "id": self.id,
            "params": self.params.to_json(),
            "n_max": self.n_max,
            "n_min": self.n_min,
            "status": self.status,
            "variant": self.variant,
        }
        if self.aux:
            out["aux"] = {k: _aux_text(v) for k, v in sorted(self.aux.items())}
        if self.first_fail is not None:
            out["first_fail"] = self.first_fail
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def _aux_text(v):
    if isinstance(v, Fraction):
        return to_text(v)
    return v


def _first_difference(kind: str, lhs, rhs):
    """Return ``(index, lhs_value, rhs_value)`` of the first mismatch, or None."""
    if kind == "bivariate" and isinstance(lhs, dict):
        for key in sorted(set(lhs) | set(rhs)):
            a, b = lhs.get(key, ZERO), rhs.get(key, ZERO)
            if a != b:
                return list(key), a, b
        return None
    if isinstance(lhs, Polynomial):
        lhs, rhs = list(lhs.coeffs), list(rhs.coeffs)
    size = max(len(lhs), len(rhs))
    for i in range(size):
        a = lhs[i] if i < len(lhs) else ZERO
        b = rhs[i] if i < len(rhs) else ZERO
        if a != b:
            return i, a, b
    return None


def check_domain(ident: Identity, params: MixedParams, aux: dict) -> None:
    if ident.lam_rule == "eq1" and params.lam != 1:
        raise UsageError(f"{ident.id} holds only at lambda = 1")
    if ident.lam_rule == "ne1" and params.lam == 1:
        raise UsageError(f"{ident.id} needs lambda != 1")
    if "s" in ident.aux:
        _s_of(aux)
    unknown = set(aux) - set(ident.aux) - ({"m"} if ident.kind == "scalar" else set())
    if unknown:
        raise UsageError(f"{ident.id} does not take auxiliary values {sorted(unknown)}")


def identity_eval(identity_id: str, params: MixedParams, n_max: int,
                  aux: Optional[dict] = None, variant: str = "printed") -> IdentityReport:
    """Check one identity at one parameter point for every admissible n up to ``n_max``."""
    ident = get_identity(identity_id)
    aux = dict(aux or {})
    check_domain(ident, params, aux)
    ns = ident.n_range(n_max)
    if ident.kind == "scalar" and aux.get("m") is not None:
        m = aux["m"]
        if not isinstance(m, int) or m < 1:
            raise UsageError(f"m must be a positive integer, got {m!r}")
        # a fixed m needs n >= m + 1
        ns = range(max(ns.start, m + 1), ns.stop)
    if len(ns) == 0:
        raise UsageError(
            f"{ident.id} has no admissible n up to n_max = {n_max}")
    sides = ident.variant(variant)
    ctx = _Ctx(params, working_order(n_max))
    for n in ns:
        lhs, rhs = sides(ctx, n, aux)
        diff = _first_difference(ident.kind, lhs, rhs)
        if diff is not None:
            index, a, b = diff
            return IdentityReport(ident.id, params, aux, ns.start, ns.stop - 1, "failed", variant,
                                  {"n": n, "coeff_index": index, "lhs": to_text(a), "rhs": to_text(b)})
    return IdentityReport(ident.id, params, aux, ns.start, ns.stop - 1, "verified", variant)


def mu_degree_bound(n: int) -> int:
    return 2 * n + 2


def mu_certification(identity_id: str, k: int, lam, n: int,
                     aux: Optional[dict] = None, variant: str = "printed") -> IdentityReport:
    """Certify an identity for every integer mu at fixed ``(k, lam, n)``.

    Scaled by ``2^(mu+1)``, each coefficient on either side is a polynomial in
    mu of degree at most ``2n + 2``; agreement at that many plus one distinct mu
    forces the difference polynomial to vanish identically.
    """
    lam = rat(lam)
    bound = mu_degree_bound(n) if n > 0 else 0
    mus = list(range(1, bound + 2))
    last = None
    for mu in mus:
        rep = identity_eval(identity_id, MixedParams(k, lam, mu), n, aux, variant)
        if not rep.verified:
            rep.certificate = {"mu_values": mus, "degree_bound": bound, "certified": False,
                               "witness_mu": mu}
            return rep
        last = rep
    last.params = MixedParams(k, lam, mus[0])
    last.certificate = {
        "mu_values": mus,
        "degree_bound": bound,
        "certified": True,
        "argument": (f"both sides times 2^(mu+1) are polynomials in mu of degree <= {bound}; "
                     f"exact agreement at {len(mus)} distinct mu values forces equality for all mu"),
    }
    return last
