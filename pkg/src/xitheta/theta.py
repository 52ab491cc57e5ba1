"""The Jacobi theta series psi(y) = sum_{n>=1} exp(-pi n^2 y).

Scalar evaluation (:func:`psi`) picks the truncation index from a provable
geometric tail bound. Arguments below one are first mapped through the
classical identity ``2 psi(y) + 1 = y**-0.5 * (2 psi(1/y) + 1)``, applied once.

:func:`psi_array` is the vectorised workhorse used by the integrators. It
always works to full double precision, relative to the value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import mpmath
import numpy as np

from .errors import DomainError, PrecisionError

EPS = np.finfo(float).eps

#: Digits used by the extended-precision path.
EXTENDED_DPS = 34


@dataclass(frozen=True)
class ToleranceSpec:
    abs_tol: float = 1e-12
    max_terms: int = 10_000

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError(f"abs_tol must be positive, got {self.abs_tol!r}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms!r}")


@dataclass(frozen=True)
class ThetaPoint:
    y: float
    value: float
    err: float
    terms: int = 0


TolLike = Union[ToleranceSpec, float, None]


def _as_tol(tol: TolLike) -> ToleranceSpec:
    if tol is None:
        return ToleranceSpec()
    if isinstance(tol, ToleranceSpec):
        return tol
    return ToleranceSpec(abs_tol=float(tol))


def _check_y(y):
    if not (y > 0) or not math.isfinite(y):
        raise DomainError(f"theta argument must be a positive finite real, got {y!r}")


def psi_tail_bound(y: float, N: int) -> float:
    """Upper bound for ``sum_{n>N} exp(-pi n^2 y)``.

    Consecutive terms past ``N`` shrink at least by ``exp(-pi (2N+3) y)``,
    so the tail is dominated by a geometric series started at ``n = N+1``.
    """
    _check_y(y)
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N!r}")
    first = math.exp(-math.pi * (N + 1) ** 2 * y)
    ratio = math.exp(-math.pi * (2 * N + 3) * y)
    return first / (1.0 - ratio) if ratio < 1.0 else math.inf


def _truncation_index(y: float, tol: ToleranceSpec) -> int:
    # rough start from exp(-pi N^2 y) ~ abs_tol, then walk to the smallest valid N
    guess = max(1, int(math.sqrt(max(0.0, math.log(1.0 / tol.abs_tol)) / (math.pi * y))) - 1)
    N = min(guess, tol.max_terms)
    while N > 1 and psi_tail_bound(y, N - 1) <= tol.abs_tol:
        N -= 1
    while psi_tail_bound(y, N) > tol.abs_tol:
        if N >= tol.max_terms:
            bound = psi_tail_bound(y, tol.max_terms)
            raise PrecisionError(
                f"psi({y}) needs more than max_terms={tol.max_terms} terms for "
                f"abs_tol={tol.abs_tol:g}; achievable bound is {bound:.3e}",
                achievable=bound,
            )
        N += 1
    return N


def _psi_direct(y: float, tol: ToleranceSpec) -> ThetaPoint:
    N = _truncation_index(y, tol)
    value = math.fsum(math.exp(-math.pi * n * n * y) for n in range(1, N + 1))
    err = psi_tail_bound(y, N) + 2 * EPS * value
    return ThetaPoint(y, value, err, N)


def psi_series(y: float, tol: TolLike = None) -> ThetaPoint:
    """The plain truncated series at ``y``, without the modular map (slow for small y)."""
    _check_y(y)
    return _psi_direct(y, _as_tol(tol))


def _psi_extended(y: float, tol: ToleranceSpec) -> ThetaPoint:
    with mpmath.workdps(EXTENDED_DPS):
        z = mpmath.mpf(y)
        small = z < 1
        if small:
            z = 1 / z
        N = _truncation_index(float(z), tol)
        s = mpmath.fsum(mpmath.exp(-mpmath.pi * n * n * z) for n in range(1, N + 1))
        err = psi_tail_bound(float(z), N)
        if small:
            root = mpmath.sqrt(z)
            s = root * (s + mpmath.mpf(1) / 2) - mpmath.mpf(1) / 2
            err *= float(root)
        return ThetaPoint(y, +s, err, N)


def psi_via_modular(y: float, tol: TolLike = None) -> ThetaPoint:
    """psi(y) computed as ``y**-0.5 * (psi(1/y) + 1/2) - 1/2``.

    The inner value is summed directly at ``1/y`` with its tolerance scaled
    by ``sqrt(y)`` so the final error still meets ``tol.abs_tol``.
    """
    _check_y(y)
    tol = _as_tol(tol)
    root = math.sqrt(y)
    inner = _psi_direct(1.0 / y, ToleranceSpec(tol.abs_tol * root, tol.max_terms))
    value = (inner.value + 0.5) / root - 0.5
    err = inner.err / root + 2 * EPS * (inner.value + 0.5) / root
    return ThetaPoint(y, max(value, 0.0), err, inner.terms)


def psi(y: float, tol: TolLike = None, extended: bool = False) -> ThetaPoint:
    """Evaluate psi(y) with ``|value - psi(y)| <= err <= tol.abs_tol``.

    >>> round(psi(1.0, 1e-12).value, 7)
    0.0432174
    """
    _check_y(y)
    tol = _as_tol(tol)
    if extended:
        return _psi_extended(y, tol)
    r = psi_via_modular(y, tol) if y < 1.0 else _psi_direct(y, tol)
    if r.err > tol.abs_tol:
        raise PrecisionError(
            f"psi({y}) cannot reach abs_tol={tol.abs_tol:g} in double precision; "
            f"achievable bound is {r.err:.3e} (try extended precision)",
            best=r, achievable=r.err,
        )
    return r


def psi_array(y) -> np.ndarray:
    """Vectorised psi to full double precision (relative) for any y > 0.

    After the modular map every argument is >= 1, where four terms leave a
    relative tail below 1e-30.
    """
    y = np.asarray(y, dtype=float)
    if np.any(~(y > 0)):
        raise DomainError("theta argument must be positive")
    small = y < 1.0
    z = np.where(small, 1.0 / y, y)
    s = np.zeros_like(z)
    for n in (4, 3, 2, 1):
        s += np.exp(-math.pi * n * n * z)
    return np.where(small, np.sqrt(z) * (s + 0.5) - 0.5, s)
