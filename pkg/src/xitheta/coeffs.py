"""Coefficients a_tau(k), a_{tau,n}(2n-1), a_{tau,n}(2n) and the polynomial f_{tau,n}.

Each coefficient is a fixed linear combination of moments from a
:class:`~xitheta.moments.MomentTable` (plus, for k <= 1, the 1-D integrals).
Factorial weights are formed as exact rationals and rounded once, and errors
propagate linearly: ``err = sum |weight| * moment_err``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np

from .errors import DomainError
from .moments import MomentTable

ValueErr = Tuple[float, float]


def _w(sign: int, j: int, p: int) -> float:
    """``sign / (j! * 2**p)`` rounded once from the exact rational."""
    return float(Fraction(sign, math.factorial(j)) / Fraction(2) ** p)


def _combine(terms) -> ValueErr:
    value = math.fsum(w * ve[0] for w, ve in terms)
    err = math.fsum(abs(w) * ve[1] for w, ve in terms)
    return value, err


@dataclass(frozen=True)
class CoefficientSet:
    tau: float
    n: int
    a: Tuple[ValueErr, ...]
    trail_odd: ValueErr
    trail_even: ValueErr

    def as_dict(self) -> dict:
        return {
            "tau": self.tau,
            "n": self.n,
            "a": [v for v, _ in self.a],
            "trail_odd": self.trail_odd[0],
            "trail_even": self.trail_even[0],
            "errs": {
                "a": [e for _, e in self.a],
                "trail_odd": self.trail_odd[1],
                "trail_even": self.trail_even[1],
            },
        }


@dataclass(frozen=True)
class EvenPolynomial:
    """``f(t) = sum_m c[m] t^(2m)``; ``c`` holds ``(value, err)`` pairs, m = 0..2n."""

    tau: float
    n: int
    c: Tuple[ValueErr, ...]

    @property
    def values(self) -> np.ndarray:
        return np.array([v for v, _ in self.c])

    @property
    def errs(self) -> np.ndarray:
        return np.array([e for _, e in self.c])

    @property
    def degree(self) -> int:
        """Degree in t."""
        nz = np.nonzero(self.values)[0]
        return 2 * int(nz[-1]) if len(nz) else 0

    def in_s(self, s):
        """Evaluate as a polynomial in ``s = t^2``."""
        return np.polynomial.polynomial.polyval(s, self.values)

    def err_in_s(self, s):
        return np.polynomial.polynomial.polyval(np.abs(s), self.errs)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return self.in_s(t * t)


def coeff_a0(table: MomentTable) -> ValueErr:
    """``a_tau(0) = [1 - (1/4 - tau^2) J+] [4 tau J+ - (1/4 - tau^2) J-log]``."""
    tau = table.tau
    q = 0.25 - tau * tau
    jp, jp_e = table.Jplus
    jm, jm_e = table.JminusLog
    first = 1 - q * jp
    second = 4 * tau * jp - q * jm
    err = abs(second) * abs(q) * jp_e + abs(first) * (4 * abs(tau) * jp_e + abs(q) * jm_e)
    return first * second, err


def a0_factors(table: MomentTable) -> Tuple[float, float]:
    """The two factors of a_tau(0), in order."""
    tau = table.tau
    q = 0.25 - tau * tau
    return 1 - q * table.Jplus[0], 4 * tau * table.Jplus[0] - q * table.JminusLog[0]


def coeff_a(table: MomentTable, k: int) -> ValueErr:
    """a_tau(k) for k >= 1 (k = 0 is :func:`coeff_a0`)."""
    if k == 0:
        return coeff_a0(table)
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    table.require(2 * k)
    tau = table.tau
    q = 0.25 - tau * tau
    p = 0.25 + tau * tau
    S, A = table.S, table.A
    if k == 1:
        return _combine([
            (8 * tau, S[0]),
            (tau * q, S[2]),
            (2 * p, A[0]),
            (-q * q / 8, A[2]),
            (-2.0, table.I2),
            (-1.0, table.I3),
        ])
    sg = (-1) ** k
    return _combine([
        (-tau * _w(sg, 2 * k - 2, 2 * k - 5), S[2 * k - 2]),
        (-tau * q * _w(sg, 2 * k, 2 * k - 3), S[2 * k]),
        (_w(sg, 2 * k - 4, 2 * k - 4), A[2 * k - 4]),
        (-p * _w(sg, 2 * k - 2, 2 * k - 3), A[2 * k - 2]),
        (q * q * _w(sg, 2 * k, 2 * k), A[2 * k]),
    ])


def coeff_trail_odd(table: MomentTable, n: int) -> ValueErr:
    """a_{tau,n}(2n-1), the t^(4n-2) coefficient of f_{tau,n}."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    table.require(4 * n - 2)
    tau = table.tau
    q = 0.25 - tau * tau
    p = 0.25 + tau * tau
    S, A = table.S, table.A
    if n == 1:
        return _combine([
            (8 * tau, S[0]),
            (tau * q, S[2]),
            (2 * p, A[0]),
            (-2.0, table.I2),
            (-1.0, table.I3),
        ])
    return _combine([
        (tau * _w(1, 4 * n - 4, 4 * n - 7), S[4 * n - 4]),
        (tau * q * _w(1, 4 * n - 2, 4 * n - 5), S[4 * n - 2]),
        (_w(-1, 4 * n - 6, 4 * n - 6), A[4 * n - 6]),
        (p * _w(1, 4 * n - 4, 4 * n - 5), A[4 * n - 4]),
    ])


def coeff_trail_even(table: MomentTable, n: int) -> ValueErr:
    """a_{tau,n}(2n) = A_{4n-4} / ((4n-4)! 2^(4n-4)), the leading coefficient."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    table.require(4 * n - 4)
    return _combine([(_w(1, 4 * n - 4, 4 * n - 4), table.A[4 * n - 4])])


def build_coefficients(table: MomentTable, n: int) -> CoefficientSet:
    table.require(4 * n - 2)
    a = tuple(coeff_a(table, k) for k in range(0, 2 * n - 1))
    return CoefficientSet(table.tau, n, a, coeff_trail_odd(table, n), coeff_trail_even(table, n))


def build_f(table: MomentTable, n: int) -> EvenPolynomial:
    """f_{tau,n} as coefficients in s = t^2: a_tau(0..2n-2), then the two trailing terms."""
    cs = build_coefficients(table, n)
    return polynomial_from(cs)


def polynomial_from(cs: CoefficientSet) -> EvenPolynomial:
    return EvenPolynomial(cs.tau, cs.n, tuple(cs.a) + (cs.trail_odd, cs.trail_even))


def alternating_sum(moments: Sequence[ValueErr], t: float, upto: int) -> ValueErr:
    """``sum_{k=0}^{upto} (-1)^k t^(2k) / ((2k)! 2^(2k)) * M_{2k}`` with ``moments[k] = M_{2k}``."""
    return _combine([(_w((-1) ** k, 2 * k, 2 * k) * t ** (2 * k), moments[k]) for k in range(upto + 1)])
