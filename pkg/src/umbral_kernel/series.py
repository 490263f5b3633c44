"""Truncated formal power series over the rationals.

A :class:`Series` of order ``N`` stores the ordinary coefficients
``c_0 .. c_N`` of ``sum c_i t^i``; everything above ``t^N`` is discarded.
Binary operations insist on equal orders so a truncation mistake shows up as
an error instead of a silently wrong coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rational import ONE, ZERO, RationalLike, rat, rat_binomial, to_text


class SeriesError(ValueError):
    """Raised when an operation's precondition on its series fails."""


@dataclass(frozen=True)
class Series:
    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 0:
            raise SeriesError("order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise SeriesError(
                f"expected {self.order + 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RationalLike], order: int | None = None) -> Series:
        cs = [rat(c) for c in coeffs]
        if order is None:
            order = max(len(cs) - 1, 0)
        cs = (cs + [ZERO] * (order + 1))[: order + 1]
        return cls(order, tuple(cs))

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i <= self.order:
            return self.coeffs[i]
        return ZERO

    def __iter__(self):
        return iter(self.coeffs)

    @property
    def is_delta(self) -> bool:
        return self.order >= 1 and self.coeffs[0] == 0 and self.coeffs[1] != 0

    @property
    def is_invertible(self) -> bool:
        return self.coeffs[0] != 0

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None for zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def truncate(self, order: int) -> Series:
        """Change the truncation order (padding with zeros when raising it)."""
        return Series.from_coeffs(self.coeffs, order)

    def __add__(self, other: Series) -> Series:
        return ps_add(self, other)

    def __sub__(self, other: Series) -> Series:
        return ps_add(self, -other)

    def __neg__(self) -> Series:
        return Series(self.order, tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> Series:
        if isinstance(other, Series):
            return ps_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c: RationalLike) -> Series:
        c = rat(c)
        return Series(self.order, tuple(c * a for a in self.coeffs))

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [to_text(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> Series:
        return cls.from_coeffs([Fraction(c) for c in data["coeffs"]], data["order"])

    def __repr__(self):
        return f"Series({self.order}, [{', '.join(to_text(c) for c in self.coeffs)}])"


def _check_orders(a: Series, b: Series) -> None:
    if a.order != b.order:
        raise SeriesError(f"order mismatch: {a.order} vs {b.order}")


def ps_add(a: Series, b: Series) -> Series:
    _check_orders(a, b)
    return Series(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def ps_mul(a: Series, b: Series) -> Series:
    _check_orders(a, b)
    n = a.order
    ac, bc = a.coeffs, b.coeffs
    out = [ZERO] * (n + 1)
    for i, x in enumerate(ac):
        if not x:
            continue
        for j in range(n + 1 - i):
            y = bc[j]
            if y:
                out[i + j] += x * y
    return Series(n, tuple(out))


# -- constructors -----------------------------------------------------------

def constant(c: RationalLike, order: int) -> Series:
    return Series.from_coeffs([c], order)


def one(order: int) -> Series:
    return constant(ONE, order)


def variable(order: int) -> Series:
    """The series ``t``."""
    return Series.from_coeffs([0, 1], order)


def exp_series(order: int, scale: RationalLike = 1) -> Series:
    """``exp(scale * t)``."""
    a = rat(scale)
    return Series(order, tuple(a ** i / math.factorial(i) for i in range(order + 1)))


def log1p_series(order: int) -> Series:
    """``log(1 + t)``."""
    cs = [ZERO] + [Fraction((-1) ** (i + 1), i) for i in range(1, order + 1)]
    return Series(order, tuple(cs))


def one_plus_t_pow(lam: RationalLike, order: int) -> Series:
    """``(1 + t)^lam`` with generalized binomial coefficients."""
    return Series(order, tuple(rat_binomial(lam, i) for i in range(order + 1)))


# -- analytic operations ----------------------------------------------------

def ps_reciprocal(f: Series) -> Series:
    if not f.is_invertible:
        raise SeriesError("reciprocal needs a nonzero constant term")
    n = f.order
    inv0 = 1 / f.coeffs[0]
    out = [inv0]
    for k in range(1, n + 1):
        s = sum((f.coeffs[i] * out[k - i] for i in range(1, k + 1)), ZERO)
        out.append(-s * inv0)
    return Series(n, tuple(out))


def ps_div(a: Series, b: Series) -> Series:
    return ps_mul(a, ps_reciprocal(b))


def ps_shift_down(f: Series, k: int = 1) -> Series:
    """Divide by ``t^k`` when the low coefficients vanish; pads the top with zeros.

    The padded coefficients are not reliable; callers keep ``k`` spare orders.
    """
    if any(f.coeffs[:k]):
        raise SeriesError(f"series is not divisible by t^{k}")
    return Series.from_coeffs(f.coeffs[k:], f.order)


def ps_compose(outer: Series, inner: Series) -> Series:
    """``outer(inner(t))``; requires ``inner(0) == 0``."""
    _check_orders(outer, inner)
    if inner.coeffs[0] != 0:
        raise SeriesError("inner series must have zero constant term")
    n = outer.order
    result = constant(outer.coeffs[n], n)
    for i in range(n - 1, -1, -1):
        result = ps_mul(result, inner)
        result = Series(n, (result.coeffs[0] + outer.coeffs[i],) + result.coeffs[1:])
    return result


def ps_comp_inverse(f: Series) -> Series:
    """Compositional inverse of a delta series by an order-by-order solve.

    With ``h_1 .. h_{m-1}`` fixed, the ``t^m`` coefficient of ``f(h)`` equals
    ``f_1 * h_m`` plus terms in the lower ``h_i`` only, so each step is a
    single division.
    """
    if not f.is_delta:
        raise SeriesError("compositional inverse needs a delta series")
    n = f.order
    f1 = f.coeffs[1]
    h = [ZERO, 1 / f1] + [ZERO] * (n - 1)
    for m in range(2, n + 1):
        partial = ps_compose(f.truncate(m), Series.from_coeffs(h[: m + 1], m))
        h[m] = -partial.coeffs[m] / f1
    return Series(n, tuple(h))


def ps_derivative(f: Series) -> Series:
    """Formal d/dt, padded back to the same order with a trailing zero."""
    cs = [(i + 1) * f.coeffs[i + 1] for i in range(f.order)] + [ZERO]
    return Series(f.order, tuple(cs))


def ps_integral(f: Series) -> Series:
    """Antiderivative with zero constant term; the top coefficient of ``f`` is dropped."""
    cs = [ZERO] + [f.coeffs[i] / (i + 1) for i in range(f.order)]
    return Series(f.order, tuple(cs))


def ps_log(f: Series) -> Series:
    if f.coeffs[0] != 1:
        raise SeriesError("log needs constant term 1")
    # log f = integral of f'/f; f' loses no information below t^{N-1}.
    return ps_integral(ps_mul(ps_derivative(f), ps_reciprocal(f)))


def ps_exp(f: Series) -> Series:
    if f.coeffs[0] != 0:
        raise SeriesError("exp needs constant term 0")
    n = f.order
    fc = f.coeffs
    g = [ONE]
    # g' = f' g  =>  m g_m = sum_k k f_k g_{m-k}
    for m in range(1, n + 1):
        s = sum((k * fc[k] * g[m - k] for k in range(1, m + 1) if fc[k]), ZERO)
        g.append(s / m)
    return Series(n, tuple(g))


def _int_pow(f: Series, e: int) -> Series:
    if e < 0:
        return _int_pow(ps_reciprocal(f), -e)
    result = one(f.order)
    base = f
    while e:
        if e & 1:
            result = ps_mul(result, base)
        e >>= 1
        if e:
            base = ps_mul(base, base)
    return result


def ps_pow(f: Series, alpha: RationalLike) -> Series:
    """``f^alpha``: repeated products for integer alpha, ``exp(alpha log f)`` otherwise."""
    alpha = rat(alpha)
    if alpha.denominator == 1:
        e = alpha.numerator
        if e < 0 and not f.is_invertible:
            raise SeriesError("negative power of a non-invertible series")
        return _int_pow(f, e)
    if f.coeffs[0] != 1:
        raise SeriesError("non-integer power needs constant term 1")
    return ps_exp(ps_log(f).scale(alpha))


def ps_pow_via_exp(f: Series, alpha: RationalLike) -> Series:
    """The exp/log route for any alpha; used to cross-check the integer path."""
    if f.coeffs[0] != 1:
        raise SeriesError("exp/log power needs constant term 1")
    return ps_exp(ps_log(f).scale(rat(alpha)))


def series_sum(terms: Sequence[Series], order: int) -> Series:
    out = [ZERO] * (order + 1)
    for s in terms:
        if s.order != order:
            raise SeriesError("order mismatch in sum")
        for i, c in enumerate(s.coeffs):
            out[i] += c
    return Series(order, tuple(out))
