import math
from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from xitheta.polyalg import (
    RationalPolynomial,
    discriminant,
    discriminant_biquadratic,
    hermite_signature_count,
    quantize,
    quantize_value,
    resultant,
    sturm_count,
)
from xitheta.quadrature import integrate_finite
from xitheta.theta import psi

ints = st.integers(-9, 9)


def poly_strategy(max_degree=8):
    return st.lists(ints, min_size=2, max_size=max_degree + 1).filter(lambda c: c[-1] != 0).map(
        lambda c: RationalPolynomial(tuple(Fraction(v) for v in c)))


@settings(max_examples=150, deadline=None)
@given(st.floats(1e-3, 1e3))
def test_modular_identity(y):
    lhs = 2 * psi(y, 1e-13).value + 1
    rhs = (2 * psi(1 / y, 1e-13).value + 1) / math.sqrt(y)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, lhs)


@settings(max_examples=200, deadline=None)
@given(poly_strategy())
def test_sturm_hermite_agree(p):
    a, b = sturm_count(p), hermite_signature_count(p)
    assert (a.n_real, a.n_distinct_complex) == (b.n_real, b.n_distinct_complex)
    assert 0 <= a.n_real <= a.n_distinct_complex <= p.degree


@settings(max_examples=100, deadline=None)
@given(ints, ints, ints.filter(lambda v: v != 0))
def test_biquadratic_closed_form(a0, a1, a2):
    p = quantize([float(a0), float(a1), float(a2)])
    assert discriminant(p) == discriminant_biquadratic(a0, a1, a2)


@settings(max_examples=60, deadline=None)
@given(poly_strategy(5), poly_strategy(4))
def test_resultant_swap_sign(a, b):
    assert resultant(a, b) == (-1) ** (a.degree * b.degree) * resultant(b, a)


@settings(max_examples=100, deadline=None)
@given(st.integers(-60, 60), st.integers(-(2 ** 40), 2 ** 40))
def test_dyadic_round_trip(e, m):
    v = math.ldexp(m, e)
    assert quantize_value(v, 14) == Fraction(v)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=15), st.floats(-3, 0), st.floats(0.1, 4))
def test_quadrature_exact_on_polynomials(c, a, width):
    P = np.polynomial.Polynomial(c)
    b = a + width
    exact = P.integ()(b) - P.integ()(a)
    r = integrate_finite(P, a, b, 1e-12)
    assert abs(r.value - exact) <= 1e-12 + 1e-13 * abs(exact) + r.err
