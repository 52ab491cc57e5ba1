import math

import numpy as np
import pytest

from xitheta.coeffs import (
    a0_factors,
    build_coefficients,
    build_f,
    coeff_a,
    coeff_a0,
    coeff_trail_even,
    coeff_trail_odd,
)
from xitheta.errors import CapacityError, DomainError


def ref_a(tb, k):
    """Five-term formula for k >= 2 written out with plain floats, as an independent reassembly."""
    tau = tb.tau
    q, p = 0.25 - tau * tau, 0.25 + tau * tau
    S = lambda j: tb.S[j][0]
    A = lambda j: tb.A[j][0]
    f = math.factorial
    inner = (-tau / (f(2 * k - 2) * 2.0 ** (2 * k - 5)) * S(2 * k - 2)
             - tau * q / (f(2 * k) * 2.0 ** (2 * k - 3)) * S(2 * k)
             + 1 / (f(2 * k - 4) * 2.0 ** (2 * k - 4)) * A(2 * k - 4)
             - p / (f(2 * k - 2) * 2.0 ** (2 * k - 3)) * A(2 * k - 2)
             + q * q / (f(2 * k) * 2.0 ** (2 * k)) * A(2 * k))
    return (-1) ** k * inner


def test_a0_vanishes_at_tau_zero(table):
    v, e = coeff_a0(table(0.0))
    assert abs(v) <= e + 1e-18


def test_a0_positive(table):
    for tau in (0.1, 0.25, 0.4):
        v, e = coeff_a0(table(tau))
        assert v - e > 0


def test_a0_product_formula(table):
    tb = table(0.3)
    q = 0.25 - 0.09
    first = 1 - q * tb.Jplus[0]
    second = 4 * 0.3 * tb.Jplus[0] - q * tb.JminusLog[0]
    assert coeff_a0(tb)[0] == pytest.approx(first * second, rel=1e-15)
    assert a0_factors(tb) == pytest.approx((first, second), rel=1e-15)


def test_a0_second_factor_bound(table):
    theta2 = sum(math.exp(-2 * math.pi * n * n) for n in range(1, 10))
    _, second = a0_factors(table(0.3))
    bound = 0.3 / 4 * 7.176026 * theta2
    assert abs(bound - 0.3 * 0.00335) < 1e-5
    assert second > bound


def test_positivity_constants_values():
    # 15 * 2^(-3/4) - (1/pi)(2/pi^2 + 4/pi + 4)
    value = 15 * 2 ** -0.75 - (2 / math.pi ** 2 + 4 / math.pi + 4) / math.pi
    assert abs(value - 7.176026) < 1e-6
    assert abs(math.pi / (3 * math.exp(math.pi)) - 0.04525351) < 1e-8


def test_coefficients_vanish_at_tau_zero(table):
    tb = table(0.0)
    cs = build_coefficients(tb, 2)
    for v, e in list(cs.a) + [cs.trail_odd, cs.trail_even]:
        assert abs(v) <= 10 * e + 1e-18
    # each constituent vanishes
    for j in (0, 2, 4, 6):
        assert abs(tb.A[j][0]) <= 2 * tb.A[j][1] + 1e-15 * tb.S[j][0]
    for v, e in (tb.I2, tb.I3, tb.JminusLog):
        assert abs(v) <= e + 1e-17


def test_a1_definitional_difference(table):
    tb = table(0.25)
    q = 0.25 - 0.0625
    a1, e1 = coeff_a(tb, 1)
    b1, f1 = coeff_trail_odd(tb, 1)
    assert abs((b1 - a1) - q * q / 8 * tb.A[2][0]) <= e1 + f1


def test_trail_odd_definitional_difference(table):
    tb = table(0.3)
    q = 0.25 - 0.09
    n = 2
    a3, e3 = coeff_a(tb, 2 * n - 1)
    b3, f3 = coeff_trail_odd(tb, n)
    extra = q * q / (math.factorial(4 * n - 2) * 2.0 ** (4 * n - 2)) * tb.A[4 * n - 2][0]
    assert abs((b3 - a3) - extra) <= e3 + f3 + 1e-17


# k = 2 exercises the 1 / (0! 2^0) weight on A_0
@pytest.mark.parametrize("k", [2, 3, 4])
def test_general_a_matches_reassembly(k, table):
    tb = table(0.3)
    v, e = coeff_a(tb, k)
    assert abs(v - ref_a(tb, k)) <= e + 1e-15 * abs(v)


def test_trail_odd_n2_reassembly(table):
    tb = table(0.25)
    tau, q, p = 0.25, 0.25 - 0.0625, 0.25 + 0.0625
    f = math.factorial
    ref = (tau / (f(4) * 2.0 ** 1) * tb.S[4][0] + tau * q / (f(6) * 2.0 ** 3) * tb.S[6][0]
           - 1 / (f(2) * 2.0 ** 2) * tb.A[2][0] + p / (f(4) * 2.0 ** 3) * tb.A[4][0])
    v, e = coeff_trail_odd(tb, 2)
    assert abs(v - ref) <= e + 1e-15 * abs(ref)


def test_trail_odd_vanishes_at_zero(table):
    v, e = coeff_trail_odd(table(0.0), 2)
    assert abs(v) <= 10 * e + 1e-18


def test_trail_even(table):
    assert coeff_trail_even(table(0.3), 1) == table(0.3).A[0]
    vals = [coeff_trail_even(table(t), 1)[0] for t in (0.1, 0.3, 0.5)]
    assert vals[0] > 0 and vals[0] < vals[1] < vals[2]
    v, e = coeff_trail_even(table(0.0), 1)
    assert abs(v) <= 2 * e + 1e-18


def test_build_f_layout(table):
    tb = table(0.3)
    f1 = build_f(tb, 1)
    assert len(f1.c) == 3 and f1.degree == 4
    assert f1.c[0] == coeff_a0(tb)
    assert f1.c[1] == coeff_trail_odd(tb, 1)
    assert f1.c[2] == coeff_trail_even(tb, 1)
    f2 = build_f(tb, 2)
    assert [c for c in f2.c] == [coeff_a0(tb), coeff_a(tb, 1), coeff_a(tb, 2),
                                coeff_trail_odd(tb, 2), coeff_trail_even(tb, 2)]
    assert f2.degree == 8
    t = 1.7
    assert f2(t) == pytest.approx(sum(v * t ** (2 * m) for m, v in enumerate(f2.values)), rel=1e-14)


def test_capacity_and_domain(table):
    tb = table(0.3, 4)
    with pytest.raises(CapacityError):
        coeff_a(tb, 3)
    with pytest.raises(CapacityError):
        build_f(tb, 2)
    with pytest.raises(DomainError):
        coeff_trail_odd(tb, 0)


@pytest.mark.parametrize("tau", [0.5, 0.75, 1.0])
def test_positive_beyond_half(tau, table):
    for n in (1, 2):
        f = build_f(table(tau), n)
        ts = np.linspace(0, 30, 601)
        assert np.all(f(ts) > 0)


def test_as_dict(table):
    d = build_coefficients(table(0.3), 1).as_dict()
    assert set(d) == {"tau", "n", "a", "trail_odd", "trail_even", "errs"}
    assert len(d["a"]) == 1


def test_tau_zero_coefficients_vanish():
    from xitheta.moments import build_moment_table

    cs = build_coefficients(build_moment_table(0.0, 8, 1e-12), 2)
    for v, e in list(cs.a) + [cs.trail_odd, cs.trail_even]:
        assert abs(v) <= e
