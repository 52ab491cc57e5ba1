"""Theta-kernel moments over the region uv > 1.

All double integrals over ``{(u, v): uv > 1}`` with the weight
``u**((2 tau - 3)/4) * v**((-2 tau - 3)/4) * psi(u) * psi(v)`` are reduced by
``u = x**2 y``, ``v = x**2 / y`` (Jacobian ``4 x**3 / y``). The region becomes
``x > 1``, ``ln(uv) = 4 ln x``, ``ln(u/v) = 2 ln y`` and the double integral
turns into an outer integral over ``x`` of the inner kernels::

    g(x) = int_0^inf y**(tau-1) psi(x**2 y) psi(x**2 / y) dy
    h(x) = int_0^inf ln(y) y**(tau-1) psi(x**2 y) psi(x**2 / y) dy

so that ``S_j = 4 int_1^inf (4 ln x)**j g dx`` and
``A_j = 8 int_1^inf (4 ln x)**j h dx``. The outer integral runs in
``r = ln x`` where ``cos(2 t ln x)`` has the constant frequency ``2 t``.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Dict, Iterable, Tuple

import numpy as np

from .errors import CapacityError, DomainError
from .quadrature import integrate_finite, integrate_line, integrate_semiinf
from .theta import psi_array

ValueErr = Tuple[float, float]

#: Tolerance for the inner w-integrals; effectively "to roundoff".
INNER_TOL = 1e-17

_KERNEL_CACHE: Dict[float, Dict[float, Tuple[float, float, float, float]]] = {}
_CACHE_LOCK = threading.Lock()
_CACHE_LIMIT = 200_000


@dataclass(frozen=True)
class InnerKernel:
    tau: float
    x: float
    g: float
    h: float
    g_err: float = 0.0
    h_err: float = 0.0


@dataclass(frozen=True)
class MomentTable:
    """Every tau-dependent integral the coefficient formulas consume.

    ``S`` and ``A`` map an even order ``j`` to ``(value, err)``.
    """

    tau: float
    j_max: int
    S: Dict[int, ValueErr]
    A: Dict[int, ValueErr]
    Jplus: ValueErr
    JminusLog: ValueErr
    I1: ValueErr
    I2: ValueErr
    I3: ValueErr
    tol_used: float
    meta: dict = field(default_factory=dict, compare=False)

    def require(self, j: int):
        if j > self.j_max:
            raise CapacityError(
                f"moment of order {j} requested but the table at tau={self.tau} "
                f"only holds j <= {self.j_max}"
            )

    def s(self, j: int) -> float:
        self.require(j)
        return self.S[j][0]

    def a(self, j: int) -> float:
        self.require(j)
        return self.A[j][0]

    def replace(self, **changes) -> "MomentTable":
        import dataclasses

        return dataclasses.replace(self, **changes)


def outer_cutoff(tol: float) -> float:
    """Upper limit X of the outer x-integral; g decays like exp(-2 pi x^2)."""
    return max(4.0, math.sqrt(math.log(1.0 / min(tol, 0.5)) / (2 * math.pi)) + 1.0)


def _kernel_batch(tau: float, xs: np.ndarray):
    x2 = np.asarray(xs, dtype=float) ** 2

    def integrand(w):
        ew = np.exp(w)[:, None]
        base = np.exp(tau * w)[:, None] * psi_array(x2[None, :] * ew) * psi_array(x2[None, :] / ew)
        return np.concatenate([base, w[:, None] * base], axis=1)

    res = integrate_line(integrand, INNER_TOL, decay_scale=2.0)
    m = len(x2)
    return res.value[:m], res.value[m:], res.err[:m], res.err[m:]


def kernel_values(tau: float, r: np.ndarray):
    """Inner kernels g, h (and their errors) at ``x = exp(r)``, memoised per tau."""
    keys = np.asarray(r, dtype=float).tolist()
    tau = float(tau)
    with _CACHE_LOCK:
        table = _KERNEL_CACHE.get(tau, {})
        found = {k: table[k] for k in keys if k in table}
    missing = sorted(set(keys) - found.keys())
    if missing:
        fresh = dict(zip(missing, zip(*_kernel_batch(tau, np.exp(np.array(missing))))))
        found.update(fresh)
        with _CACHE_LOCK:
            if sum(len(t) for t in _KERNEL_CACHE.values()) > _CACHE_LIMIT:
                _KERNEL_CACHE.clear()
            _KERNEL_CACHE.setdefault(tau, {}).update(fresh)
    out = np.array([found[k] for k in keys], dtype=float).reshape(-1, 4)
    return out[:, 0], out[:, 1], out[:, 2], out[:, 3]


def clear_kernel_cache():
    with _CACHE_LOCK:
        _KERNEL_CACHE.clear()


def inner_kernel(tau: float, x: float, tol: float = 1e-12) -> InnerKernel:
    """g and h at a single ``x >= 1`` (computed to roundoff; ``tol`` is checked)."""
    if not x >= 1:
        raise DomainError(f"inner kernel needs x >= 1, got {x!r}")
    g, h, ge, he = _kernel_batch(tau, np.array([float(x)]))
    return InnerKernel(tau, float(x), float(g[0]), float(h[0]), float(ge[0]), float(he[0]))


def _outer(tau: float, weights, tol, frequency: float = 0.0):
    """Integrate ``weights(r) * [g, h]`` over r in [0, ln X].

    ``weights(r)`` returns ``(wg, wh)``, two arrays of shape ``(len(r), m)``;
    component ``k`` of the result is ``int wg[:, k] g + wh[:, k] h  x dr``.
    The propagated inner-kernel error rides along as extra components.
    """
    tol_arr = np.atleast_1d(np.asarray(tol, dtype=float))
    R = math.log(outer_cutoff(float(np.min(tol_arr))))

    def integrand(r):
        g, h, ge, he = kernel_values(tau, r)
        wg, wh = weights(r)
        x = np.exp(r)[:, None]
        val = (wg * g[:, None] + wh * h[:, None]) * x
        err = (np.abs(wg) * ge[:, None] + np.abs(wh) * he[:, None]) * x
        return np.concatenate([val, err], axis=1)

    probe = integrand(np.array([0.0]))
    m = probe.shape[1] // 2
    big = np.full(m, np.inf)
    res = integrate_finite(integrand, 0.0, R, np.concatenate([np.broadcast_to(tol_arr, (m,)), big]),
                           hint=frequency)
    # crude tail beyond X: log-slope of g is about -4 pi x^2
    end = np.abs(integrand(np.array([R]))[0, :m])
    tail = end / (4 * math.pi * math.exp(2 * R))
    value = res.value[:m]
    err = res.err[:m] + res.value[m:] + tail
    return value, err


def _norm(j: int) -> float:
    return math.factorial(j) * 2.0 ** j


def _check_j(j):
    if j < 0 or j % 2:
        raise DomainError(f"moment order must be an even integer >= 0, got {j!r}")


def _moments(tau: float, js: Iterable[int], tol: float):
    """S_j and A_j for the given orders from one shared sweep over x."""
    js = list(js)
    for j in js:
        _check_j(j)
    scale = np.array([_norm(j) for j in js])

    # components are normalised by j! 2^j so one absolute tol fits all orders
    def weights(r):
        pw = np.stack([(4 * r) ** j / _norm(j) if j else np.ones_like(r) for j in js], axis=1)
        zeros = np.zeros_like(pw)
        return np.concatenate([4 * pw, zeros], axis=1), np.concatenate([zeros, 8 * pw], axis=1)

    value, err = _outer(tau, weights, tol)
    k = len(js)
    S = {j: (float(value[i] * scale[i]), float(err[i] * scale[i])) for i, j in enumerate(js)}
    A = {j: (float(value[k + i] * scale[i]), float(err[k + i] * scale[i])) for i, j in enumerate(js)}
    return S, A


def moment_S(tau: float, j: int, tol: float = 1e-12) -> ValueErr:
    """``S_j(tau) = int int [ln(uv)]^j u^((2tau-3)/4) v^((-2tau-3)/4) 1{uv>1} psi psi``."""
    S, _ = _moments(tau, [j], tol)
    return S[j]


def moment_A(tau: float, j: int, tol: float = 1e-12) -> ValueErr:
    """As :func:`moment_S` with the extra factor ``ln(u/v)``."""
    _, A = _moments(tau, [j], tol)
    return A[j]


def cosine_kernels(tau: float, ts, tol: float = 1e-12):
    """C(tau, t) and D(tau, t) for every t in ``ts`` from one sweep.

    Returns arrays ``(C, C_err, D, D_err)``.
    """
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    freq = 2 * float(np.max(np.abs(ts)))

    def weights(r):
        c = np.cos(2 * np.outer(r, ts))
        zeros = np.zeros_like(c)
        return np.concatenate([4 * c, zeros], axis=1), np.concatenate([zeros, 8 * c], axis=1)

    value, err = _outer(tau, weights, tol, frequency=freq)
    k = len(ts)
    return value[:k], err[:k], value[k:], err[k:]


def cosine_kernel_C(tau: float, t: float, tol: float = 1e-12) -> ValueErr:
    """``C(tau, t)``: the double integral with the factor ``cos((t/2) ln(uv))``."""
    freq = 2 * abs(t)

    def weights(r):
        c = np.cos(2 * t * r)[:, None]
        return 4 * c, np.zeros_like(c)

    value, err = _outer(tau, weights, tol, frequency=freq)
    return float(value[0]), float(err[0])


def cosine_kernel_D(tau: float, t: float, tol: float = 1e-12) -> ValueErr:
    """``D(tau, t)``: as C with the extra factor ``ln(u/v)``."""
    freq = 2 * abs(t)

    def weights(r):
        c = np.cos(2 * t * r)[:, None]
        return np.zeros_like(c), 8 * c

    value, err = _outer(tau, weights, tol, frequency=freq)
    return float(value[0]), float(err[0])


def _one_dim_integrands(tau: float):
    p1 = (2 * tau - 3) / 4
    p2 = (-2 * tau - 3) / 4

    def f(u):
        lu = np.log(u)
        a, b = u ** (tau - 0.5), u ** (-tau - 1.0)
        c, d = u ** (-tau - 0.5), u ** (tau - 1.0)
        cols = [
            u ** p1 + u ** p2,
            (u ** p1 - u ** p2) * lu,
            (1 + 2 * tau) * (a + b) + (1 - 2 * tau) * (c + d),
            (a + b) - (c + d),
            ((1 + 2 * tau) * (a - b) + (1 - 2 * tau) * (d - c)) * lu,
        ]
        return np.stack(cols, axis=1) * psi_array(u)[:, None]

    return f


def one_dim_integrals(tau: float, tol: float = 1e-12):
    """The five psi-weighted integrals over (1, inf).

    Returns ``(Jplus, JminusLog, I1, I2, I3)``, each a ``(value, err)`` pair.
    """
    if not abs(tau) < 1.5:
        raise DomainError(f"one-dimensional integrals need |tau| < 3/2, got {tau!r}")
    res = integrate_semiinf(_one_dim_integrands(tau), 1.0, tol, decay_scale=math.pi)
    return tuple((float(v), float(e)) for v, e in zip(res.value, res.err))


def i2_integrand_factored(tau: float, u):
    """``u^(-tau-1) (u^(2 tau) - 1)(u^(1/2) - 1)``, the I2 integrand over psi."""
    u = np.asarray(u, dtype=float)
    return u ** (-tau - 1) * (u ** (2 * tau) - 1) * (np.sqrt(u) - 1)


def build_moment_table(tau: float, j_max: int = 8, tol: float = 1e-12) -> MomentTable:
    """All S_j, A_j for even ``j <= j_max`` plus the five 1-D integrals."""
    if j_max < 0 or j_max % 2:
        raise DomainError(f"j_max must be an even integer >= 0, got {j_max!r}")
    S, A = _moments(tau, range(0, j_max + 1, 2), tol)
    jp, jm, i1, i2, i3 = one_dim_integrals(tau, tol)
    return MomentTable(float(tau), int(j_max), S, A, jp, jm, i1, i2, i3, float(tol))
