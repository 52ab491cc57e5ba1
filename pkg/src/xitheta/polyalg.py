"""Exact polynomial algebra for f_{tau,n}.

Floating coefficients are first quantized to dyadic rationals; everything
after that (Sturm chains, Hermite forms, subresultant resultants) runs in
exact rational arithmetic with :class:`fractions.Fraction`.
"""
from __future__ import annotations

import itertools
import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError

Poly = Tuple[Fraction, ...]


def _trim(coeffs) -> Poly:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class RationalPolynomial:
    """Exact polynomial, coefficients in ascending degree."""

    coeffs: Poly

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1]

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(acc, Fraction) else float(c))
        return acc

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(tuple(k * c for k, c in enumerate(self.coeffs))[1:])


@dataclass(frozen=True)
class RootCountReport:
    n_real: int
    n_distinct_complex: int
    stable: bool
    method: str


# -- basic arithmetic on coefficient tuples ---------------------------------

def _divmod(a: Poly, b: Poly):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / lb
        q[k] = f
        for i, bc in enumerate(b):
            a[i + k] -= f * bc
        a = list(_trim(a))
    return _trim(q), _trim(a)


def _prem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder: ``lc(b)^(deg a - deg b + 1) a = q b + r``."""
    delta = len(a) - len(b)
    _, r = _divmod(tuple(c * b[-1] ** (delta + 1) for c in a), b)
    return r


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Sequence[int]) -> int:
    s = [x for x in signs if x]
    return sum(1 for u, v in zip(s, s[1:]) if u != v)


def _as_poly(poly) -> RationalPolynomial:
    if isinstance(poly, RationalPolynomial):
        return poly
    return RationalPolynomial(tuple(poly))


# -- quantization ---------------------------------------------------------------

def quantize_value(c: float, digits: int) -> Fraction:
    """Round ``c`` to a dyadic rational with relative resolution ``10**-digits``."""
    if c == 0:
        return Fraction(0)
    if not math.isfinite(c):
        raise DomainError(f"cannot quantize non-finite coefficient {c!r}")
    e = math.frexp(abs(c))[1] - 1 - math.ceil(digits * math.log2(10))
    m = round(math.ldexp(c, -e))
    return Fraction(m) * Fraction(2) ** e


def quantize(poly, digits: int = 14) -> RationalPolynomial:
    """Exact polynomial in ``t`` from coefficients in ``s = t^2``.

    ``poly`` is an :class:`~xitheta.coeffs.EvenPolynomial` or a plain sequence
    of s-coefficients (ascending).
    """
    if digits < 1:
        raise DomainError(f"digits must be >= 1, got {digits}")
    values = getattr(poly, "values", poly)
    out: List[Fraction] = []
    for m, c in enumerate(values):
        if m:
            out.append(Fraction(0))
        out.append(quantize_value(float(c), digits))
    return RationalPolynomial(tuple(out))


# -- Sturm --------------------------------------------------------------------

def sturm_chain(poly) -> List[Poly]:
    p = _as_poly(poly).coeffs
    chain = [p, _as_poly(p).derivative().coeffs]
    while chain[-1]:
        _, r = _divmod(chain[-2], chain[-1])
        chain.append(tuple(-c for c in r))
    return chain[:-1]


def _distinct_roots(poly: RationalPolynomial, gcd: Poly) -> int:
    return poly.degree - (len(gcd) - 1)


def sturm_count(poly) -> RootCountReport:
    """Distinct real roots from sign variations of the Sturm chain at -inf and +inf."""
    poly = _as_poly(poly)
    if poly.is_zero:
        raise DomainError("root count of the zero polynomial is undefined")
    chain = sturm_chain(poly)
    at_pos = [_sign(p[-1]) for p in chain]
    at_neg = [_sign(p[-1]) * (-1) ** (len(p) - 1) for p in chain]
    n_real = _variations(at_neg) - _variations(at_pos)
    return RootCountReport(n_real, _distinct_roots(poly, chain[-1]), True, "sturm")


# -- Hermite form ----------------------------------------------------------------

def power_sums(poly, count: int) -> List[Fraction]:
    """Power sums p_0 .. p_{count-1} of the roots, via Newton's identities."""
    poly = _as_poly(poly)
    d = poly.degree
    c = [x / poly.lc for x in poly.coeffs]
    p = [Fraction(d)]
    for k in range(1, count):
        acc = Fraction(0)
        for i in range(1, min(k, d + 1)):
            acc += c[d - i] * p[k - i]
        if k <= d:
            acc += k * c[d - k]
        p.append(-acc)
    return p


def hermite_matrix(poly) -> List[List[Fraction]]:
    poly = _as_poly(poly)
    d = poly.degree
    p = power_sums(poly, max(2 * d - 1, 1))
    return [[p[i + j] for j in range(d)] for i in range(d)]


def inertia(matrix) -> Tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of an exact symmetric matrix.

    Congruence by symmetric elimination: a nonzero diagonal pivot contributes
    its sign; when the whole diagonal vanishes a 2x2 block ``[[0, a], [a, 0]]``
    contributes one of each sign.
    """
    M = [list(map(Fraction, row)) for row in matrix]
    size = len(M)
    pos = neg = 0
    while M:
        n = len(M)
        piv = next((i for i in range(n) if M[i][i] != 0), None)
        if piv is not None:
            d = M[piv][piv]
            pos += d > 0
            neg += d < 0
            rest = [i for i in range(n) if i != piv]
            M = [[M[i][j] - M[i][piv] * M[piv][j] / d for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if M[i][j] != 0), None)
        if pair is None:
            break
        i0, j0 = pair
        a = M[i0][j0]
        pos += 1
        neg += 1
        rest = [i for i in range(n) if i not in pair]
        # Schur complement with B^{-1} = [[0, 1/a], [1/a, 0]]
        M = [[M[i][j] - (M[i][i0] * M[j0][j] + M[i][j0] * M[i0][j]) / a for j in rest] for i in rest]
    return pos, neg, size - pos - neg


def hermite_signature_count(poly) -> RootCountReport:
    """Signature and rank of the Hermite form count distinct real and complex roots."""
    poly = _as_poly(poly)
    if poly.is_zero:
        raise DomainError("root count of the zero polynomial is undefined")
    if poly.degree == 0:
        return RootCountReport(0, 0, True, "hermite")
    pos, neg, _ = inertia(hermite_matrix(poly))
    return RootCountReport(pos - neg, pos + neg, True, "hermite")


# -- resultants and discriminants --------------------------------------------------

def resultant(a, b) -> Fraction:
    """Res(a, b) by the subresultant pseudo-remainder sequence."""
    A, B = _as_poly(a).coeffs, _as_poly(b).coeffs
    if not A or not B:
        return Fraction(0)
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -1
    if len(B) == 1:
        return s * B[0] ** (len(A) - 1)
    g = h = Fraction(1)
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _prem(A, B)
        A = B
        B = tuple(c / (g * h ** delta) for c in R)
        g = A[-1]
        h = h * (g / h) ** delta
        if not B:
            return Fraction(0)
        if len(B) == 1:
            break
    da = len(A) - 1
    h = B[0] ** da / h ** (da - 1)
    return s * h


def discriminant(poly) -> Fraction:
    """``(-1)^(d(d-1)/2) Res(f, f') / lc(f)``."""
    poly = _as_poly(poly)
    if poly.is_zero:
        raise DomainError("discriminant of the zero polynomial is undefined")
    d = poly.degree
    if d < 1:
        raise DomainError("discriminant needs degree >= 1")
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(poly, poly.derivative()) / poly.lc


def discriminant_biquadratic(a0, a1, a2):
    """Discriminant of ``a2 t^4 + a1 t^2 + a0``: ``16 a2 a0 (a1^2 - 4 a2 a0)^2``."""
    return 16 * a2 * a0 * (a1 * a1 - 4 * a2 * a0) ** 2


# -- positivity -----------------------------------------------------------------------

def min_nonneg_s(poly, window: float = 1e4) -> Tuple[float, float]:
    """Global minimum over ``s >= 0`` of a polynomial in ``s`` (ascending coefficients).

    Candidates are ``s = 0`` and the real, nonnegative critical points. If the
    leading coefficient is not positive the minimum is taken over
    ``[0, window]`` instead, with a warning.
    """
    c = np.trim_zeros(np.asarray(getattr(poly, "values", poly), dtype=float), "b")
    if len(c) == 0:
        return 0.0, 0.0
    P = np.polynomial.Polynomial(c)
    cand = [0.0]
    if len(c) > 2:
        crit = P.deriv().roots()
        scale = max(1.0, float(np.max(np.abs(crit))))
        cand += [float(z.real) for z in np.atleast_1d(crit)
                 if abs(z.imag) <= 1e-9 * scale and z.real >= 0]
    elif len(c) == 2 and c[1] < 0:
        cand.append(window)
    if c[-1] <= 0:
        warnings.warn("leading coefficient is not positive; minimum taken over a bounded window",
                      RuntimeWarning, stacklevel=2)
        cand = [s for s in cand if s <= window] + [window]
    vals = P(np.array(cand))
    i = int(np.argmin(vals))
    return cand[i], float(vals[i])


class CorollaryGap(NamedTuple):
    gap: float
    degenerate: bool


def corollary_iv_gap(a0: float, a1: float, a2: float, err: float = 0.0) -> CorollaryGap:
    """``a1 + 2 sqrt(a2 a0)`` and whether ``|a1| = 2 sqrt(a2 a0)`` within ``err``.

    A vanishing gap means ``f(t) = a2 t^4 + a1 t^2 + a0`` touches zero at a real t;
    ``degenerate`` marks a zero discriminant.
    """
    if a0 < 0 or a2 < 0:
        raise DomainError(f"need a0 >= 0 and a2 >= 0, got a0={a0!r}, a2={a2!r}")
    root = 2 * math.sqrt(a2 * a0)
    return CorollaryGap(a1 + root, abs(abs(a1) - root) <= err)


# -- perturbation stability and self-test -----------------------------------------------

COUNTERS = {"sturm": sturm_count, "hermite": hermite_signature_count}


def count_with_stability(values, errs, digits: int = 14, method: str = "sturm",
                         samples: int = 20, seed: int = 0) -> RootCountReport:
    """Root count of the quantized polynomial plus a stability flag.

    Coefficients (in s) are shifted by ``+-err``: every sign pattern when there
    are at most three coefficients (t-degree <= 4), otherwise ``samples``
    random patterns from a fixed seed.
    """
    counter = COUNTERS[method]
    values = np.asarray(values, dtype=float)
    errs = np.asarray(errs, dtype=float)
    base = counter(quantize(values, digits))
    if len(values) <= 3:
        patterns = itertools.product((-1.0, 1.0), repeat=len(values))
    else:
        rng = np.random.default_rng(seed)
        patterns = (rng.choice((-1.0, 1.0), size=len(values)) for _ in range(samples))
    stable = True
    for sg in patterns:
        shifted = counter(quantize(values + np.asarray(sg) * errs, digits))
        if (shifted.n_real, shifted.n_distinct_complex) != (base.n_real, base.n_distinct_complex):
            stable = False
            break
    return RootCountReport(base.n_real, base.n_distinct_complex, stable, method)


def random_even_polynomial(rng: random.Random, max_degree: int = 8, bound: int = 9) -> RationalPolynomial:
    while True:
        half = rng.randint(0, max_degree // 2)
        s_coeffs = [rng.randint(-bound, bound) for _ in range(half + 1)]
        t_coeffs: List[int] = []
        for m, c in enumerate(s_coeffs):
            if m:
                t_coeffs.append(0)
            t_coeffs.append(c)
        p = RationalPolynomial(tuple(t_coeffs))
        if not p.is_zero:
            return p


def selftest(count: int = 200, seed: int = 20240601) -> dict:
    """Sturm vs. Hermite agreement on random even integer polynomials."""
    rng = random.Random(seed)
    mismatches = []
    for _ in range(count):
        p = random_even_polynomial(rng)
        a, b = sturm_count(p), hermite_signature_count(p)
        if (a.n_real, a.n_distinct_complex) != (b.n_real, b.n_distinct_complex):
            mismatches.append([str(c) for c in p.coeffs])
    return {"count": count, "seed": seed, "mismatches": mismatches, "pass": not mismatches}
