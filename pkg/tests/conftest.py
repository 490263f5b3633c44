from fractions import Fraction

from hypothesis import settings, strategies as st

from umbral_kernel.series import Series

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def rationals(draw, max_num=9, max_den=6):
    num = draw(st.integers(min_value=-max_num, max_value=max_num))
    den = draw(st.integers(min_value=1, max_value=max_den))
    return Fraction(num, den)


@st.composite
def series(draw, order=None, max_order=8, constant=None):
    n = draw(st.integers(min_value=1, max_value=max_order)) if order is None else order
    coeffs = draw(st.lists(rationals(), min_size=n + 1, max_size=n + 1))
    if constant is not None:
        coeffs[0] = Fraction(constant)
    return Series(n, tuple(coeffs))


@st.composite
def delta_series(draw, order=None, max_order=16):
    s = draw(series(order=order, max_order=max_order, constant=0))
    lead = draw(rationals().filter(bool))
    coeffs = list(s.coeffs)
    coeffs[1] = lead
    return Series(s.order, tuple(coeffs))


@st.composite
def invertible_series(draw, order=None, max_order=8):
    s = draw(series(order=order, max_order=max_order))
    c0 = draw(rationals().filter(bool))
    return Series(s.order, (c0,) + s.coeffs[1:])
