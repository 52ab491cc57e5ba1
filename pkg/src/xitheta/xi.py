"""Riemann xi through the theta integral, and the modulus F(tau, t).

``xi(s) = 1/2 + s(s-1)/2 * int_1^inf (y^(s/2-1) + y^(-(s+1)/2)) psi(y) dy``
is evaluated directly (zeta never appears). ``F(tau, t) = 4 |xi(1/2 + tau - i t)|^2``
is then compared with its representation assembled from a
:class:`~xitheta.moments.MomentTable`, and with the closed tau-derivative.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .moments import MomentTable, cosine_kernel_C, cosine_kernel_D
from .quadrature import integrate_semiinf
from .theta import psi_array

#: Step and tolerance of the central-difference oracle for dF/dtau.
FD_STEP = 1e-4
FD_TOL = 1e-12


@dataclass(frozen=True)
class ModulusPoint:
    tau: float
    t: float
    F_direct: float
    F_rhs: float
    err: float

    @property
    def rel_err(self) -> float:
        return abs(self.F_direct - self.F_rhs) / (1.0 + abs(self.F_direct))


def xi_with_err(s: complex, tol: float = 1e-13):
    """``(xi(s), err)`` with err an estimate of the absolute error."""
    s = complex(s)
    pref = s * (s - 1) / 2
    if pref == 0:
        return complex(0.5), 0.0
    a = s / 2 - 1
    b = -(s + 1) / 2

    def f(y):
        ly = np.log(y)
        z = np.exp(a * ly) + np.exp(b * ly)
        return np.stack([z.real, z.imag], axis=1) * psi_array(y)[:, None]

    inner_tol = tol / abs(pref)
    res = integrate_semiinf(f, 1.0, inner_tol, decay_scale=math.pi, hint=abs(s.imag) / 2)
    integral = complex(res.value[0], res.value[1])
    err = abs(pref) * float(np.hypot(res.err[0], res.err[1]))
    return 0.5 + pref * integral, err


def xi_direct(s: complex, tol: float = 1e-13) -> complex:
    """Riemann xi at a complex point.

    >>> round(xi_direct(0.5).real, 6)
    0.497121
    """
    return xi_with_err(s, tol)[0]


def F_direct(tau: float, t: float, tol: float = 1e-13) -> float:
    """``4 |xi(1/2 + tau - i t)|^2``."""
    return 4 * abs(xi_direct(complex(0.5 + tau, -t), tol)) ** 2


def F_direct_with_err(tau: float, t: float, tol: float = 1e-13):
    z, e = xi_with_err(complex(0.5 + tau, -t), tol)
    return 4 * abs(z) ** 2, 8 * abs(z) * e + 4 * e * e


def _check_table(tau, table: MomentTable):
    if table.tau != float(tau):
        raise DomainError(f"moment table is for tau={table.tau}, not tau={tau}")


def _c_weight(tau, t):
    return 2 * ((t * t + tau * tau + 0.25) ** 2 - tau * tau)


def F_rhs_with_err(tau: float, t: float, table: MomentTable, tol: float = 1e-10,
                   C: Optional[tuple] = None):
    """Modulus representation from moments; returns ``(value, err)``.

    ``C`` may carry a precomputed ``(value, err)`` of C(tau, t); otherwise it is
    integrated with a tolerance scaled down by its weight.
    """
    _check_table(tau, table)
    w = _c_weight(tau, t)
    if C is None:
        C = cosine_kernel_C(tau, t, tol / (4 * max(1.0, abs(w))))
    q = tau * tau - 0.25
    jp, jp_e = table.Jplus
    i1, i1_e = table.I1
    s0, s0_e = table.S[0]
    last = 1 + q * jp
    value = w * C[0] - t * t * i1 - 2 * q * q * s0 + last * last
    err = abs(w) * C[1] + t * t * i1_e + 2 * q * q * s0_e + 2 * abs(last * q) * jp_e
    return value, err


def F_rhs(tau: float, t: float, table: MomentTable, tol: float = 1e-10) -> float:
    """``2[(t^2+tau^2+1/4)^2 - tau^2] C - t^2 I1 - 2(tau^2-1/4)^2 S_0 + [1 + (tau^2-1/4) J+]^2``."""
    return F_rhs_with_err(tau, t, table, tol)[0]


def modulus_point(tau: float, t: float, table: MomentTable, tol: float = 1e-10,
                  C: Optional[tuple] = None) -> ModulusPoint:
    direct, d_err = F_direct_with_err(tau, t, min(tol, 1e-13))
    rhs, r_err = F_rhs_with_err(tau, t, table, tol, C=C)
    return ModulusPoint(float(tau), float(t), direct, rhs, d_err + r_err)


def dF_dtau_with_err(tau: float, t: float, table: MomentTable, a0: float, tol: float = 1e-10,
                     C: Optional[tuple] = None, D: Optional[tuple] = None, a0_err: float = 0.0):
    """Closed-form tau-derivative of F; returns ``(value, err)``."""
    _check_table(tau, table)
    q = 0.25 - tau * tau
    t2 = t * t
    wc = 8 * tau * (t2 - q)
    wd = (t2 + 0.25 + tau * tau) ** 2 - tau * tau
    if C is None:
        C = cosine_kernel_C(tau, t, tol / (8 * max(1.0, abs(wc))))
    if D is None:
        D = cosine_kernel_D(tau, t, tol / (8 * max(1.0, abs(wd))))
    i2, i2_e = table.I2
    i3, i3_e = table.I3
    s0, s0_e = table.S[0]
    a0m, a0m_e = table.A[0]
    value = (wc * C[0] + wd * D[0] - 2 * t2 * i2 - t2 * i3
             + 8 * tau * q * s0 - q * q * a0m + a0)
    err = (abs(wc) * C[1] + abs(wd) * D[1] + 2 * t2 * i2_e + t2 * i3_e
           + 8 * abs(tau * q) * s0_e + q * q * a0m_e + a0_err)
    return value, err


def dF_dtau(tau: float, t: float, table: MomentTable, a0: float, tol: float = 1e-10) -> float:
    """``dF/dtau`` from cosine kernels, the 1-D integrals and ``a0 = a_tau(0)``."""
    return dF_dtau_with_err(tau, t, table, a0, tol)[0]


def dF_dtau_fd(tau: float, t: float, h: float = FD_STEP, tol: float = FD_TOL) -> float:
    """Central finite difference of :func:`F_direct` in tau (an independent oracle)."""
    return (F_direct(tau + h, t, tol) - F_direct(tau - h, t, tol)) / (2 * h)
