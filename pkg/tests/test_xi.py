import math

import mpmath
import pytest

from oracles import xi_zeta
from xitheta.coeffs import build_f, coeff_a0
from xitheta.errors import DomainError
from xitheta.xi import (
    F_direct,
    F_rhs,
    dF_dtau,
    dF_dtau_fd,
    modulus_point,
    xi_direct,
    xi_with_err,
)


def test_xi_at_zero_and_one():
    assert xi_direct(0) == 0.5
    assert xi_direct(1) == 0.5


def test_xi_half_against_gamma_zeta_constants():
    # -(1/8) pi^(-1/4) Gamma(1/4) zeta(1/2) from tabulated constants
    ref = -(1 / 8) * math.pi ** -0.25 * 3.6256099 * -1.4603545
    assert abs(xi_direct(0.5).real - ref) < 1e-6
    assert round(xi_direct(0.5).real, 6) == 0.497121


@pytest.mark.parametrize("s", [0.5, 2.0, complex(0.5, 3.0), complex(0.8, 10.0), complex(0.6, 14.1347)])
def test_xi_against_zeta_oracle(s):
    ref = complex(xi_zeta(s))
    z, err = xi_with_err(s, 1e-14)
    assert abs(z - ref) <= max(10 * err, 1e-13)


def test_F_direct_at_origin():
    # 4 xi(1/2)^2 from the gamma-zeta oracle
    ref = 4 * float(xi_zeta(0.5)) ** 2
    assert abs(F_direct(0.0, 0.0) - ref) < 1e-12
    assert abs(F_direct(0.0, 0.0) - 0.9885163) < 1e-6


def test_F_direct_evenness():
    base = F_direct(0.3, 5.0)
    assert abs(F_direct(0.3, -5.0) - base) <= 1e-12 * base
    assert abs(F_direct(-0.3, 5.0) - base) <= 1e-12 * base


def test_F_rhs_at_t_zero(table):
    tb = table(0.3)
    q = 0.3 ** 2 - 0.25
    expected = (1 + q * tb.Jplus[0]) ** 2
    assert abs(F_rhs(0.3, 0.0, tb, 1e-12) - expected) < 1e-12


@pytest.mark.parametrize("tau, t", [(0.3, 5.0), (0.1, 14.1347251417)])
def test_F_rhs_matches_direct(tau, t, table):
    p = modulus_point(tau, t, table(tau, 2, 1e-13), 1e-13)
    assert p.rel_err <= 1e-8
    assert p.F_direct >= 0


def test_F_rhs_table_mismatch(table):
    with pytest.raises(DomainError):
        F_rhs(0.2, 1.0, table(0.3))


def test_gradient_at_t_zero(table):
    tb = table(0.3)
    a0, _ = coeff_a0(tb)
    assert abs(dF_dtau(0.3, 0.0, tb, a0) - a0) < 1e-12
    assert a0 > 0


def test_gradient_matches_finite_difference(table):
    tb = table(0.3, 2, 1e-13)
    a0, _ = coeff_a0(tb)
    g = dF_dtau(0.3, 5.0, tb, a0, 1e-13)
    fd = dF_dtau_fd(0.3, 5.0)
    assert abs(g - fd) <= 1e-5 * abs(fd)


def test_gradient_nonnegative_at_half(table):
    tb = table(0.5)
    a0, _ = coeff_a0(tb)
    for t in (0.0, 2.0, 5.0, 10.0):
        assert dF_dtau(0.5, t, tb, a0) >= 0


@pytest.mark.parametrize("n", [1, 2])
def test_f_dominates_gradient(n, table):
    for tau in (0.1, 0.3, 0.45):
        tb = table(tau)
        a0, _ = coeff_a0(tb)
        f = build_f(tb, n)
        for t in (0.5, 1.0, 2.0, 3.0, 5.0, 8.0):
            assert f(t) > dF_dtau(tau, t, tb, a0)


def test_first_zero_is_tiny():
    # xi(1/2 + i 14.1347251417...) vanishes; direct evaluation gets close to zero
    z = xi_direct(complex(0.5, 14.134725141734693))
    assert abs(z) < 1e-12
    assert abs(xi_direct(complex(0.5, 14.0))) > 1e-4
