from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .rational import ZERO, RationalLike, binomial, rat, to_text


class Polynomial:
    """Dense polynomial in ``x`` with rational coefficients (low degree first).

    Trailing zeros are stripped on construction, so ``==`` compares values.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, n: int, c: RationalLike = 1) -> Polynomial:
        return cls([0] * n + [c])

    @classmethod
    def constant(cls, c: RationalLike) -> Polynomial:
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> Polynomial:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> Polynomial:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> Polynomial:
        return _as_poly(other) - self

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            c = rat(other)
            return Polynomial(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __call__(self, x: RationalLike) -> Fraction:
        x = rat(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, k: int = 1) -> Polynomial:
        p = self
        for _ in range(k):
            p = Polynomial(i * c for i, c in enumerate(p.coeffs) if i)
        return p

    def shift(self, a: RationalLike) -> Polynomial:
        """``p(x + a)``."""
        a = rat(a)
        if a == 0:
            return self
        n = len(self.coeffs)
        out = [ZERO] * n
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            # (x + a)^i = sum_j C(i, j) a^(i-j) x^j
            for j in range(i + 1):
                out[j] += c * binomial(i, j) * a ** (i - j)
        return Polynomial(out)

    def reflect(self) -> Polynomial:
        """``p(-x)``."""
        return Polynomial(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def mul_x(self) -> Polynomial:
        return Polynomial((ZERO,) + self.coeffs) if self.coeffs else self

    def div_x(self) -> Polynomial:
        """Exact division by ``x``; the constant term must vanish."""
        if self[0] != 0:
            raise ValueError("polynomial has nonzero constant term; x does not divide it")
        return Polynomial(self.coeffs[1:])

    def to_text_list(self) -> list[str]:
        return [to_text(c) for c in self.coeffs] or ["0"]

    def __repr__(self):
        return f"Polynomial([{', '.join(self.to_text_list())}])"


def _as_poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    return Polynomial([rat(p)])


def poly_sum(polys: Iterable[Polynomial]) -> Polynomial:
    acc: list[Fraction] = []
    for p in polys:
        if len(p.coeffs) > len(acc):
            acc.extend([ZERO] * (len(p.coeffs) - len(acc)))
        for i, c in enumerate(p.coeffs):
            acc[i] += c
    return Polynomial(acc)


X = Polynomial([0, 1])
