"""Tau-grid sweeps, the bundled verification suites and the moment-table cache.

A scan evaluates, for every (tau, n) cell, the polynomial f_{tau,n}: its
minimum over s = t^2 >= 0 against ten times the propagated coefficient
error, Sturm and Hermite root counts of the quantized polynomial, its exact
discriminant and (for n = 1) the closed biquadratic discriminant and the
corollary gap.
"""
from __future__ import annotations

import csv
import dataclasses
import hashlib
import io
import json
import logging
import math
import os
import tempfile
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from . import polyalg
from .coeffs import build_coefficients, build_f, coeff_a0, a0_factors, alternating_sum, polynomial_from
from .errors import CacheError, CapacityError, DomainError, PrecisionError, XiThetaError
from .moments import MomentTable, build_moment_table, cosine_kernels
from .theta import ToleranceSpec, psi_series
from .xi import F_direct, F_direct_with_err, F_rhs_with_err, dF_dtau_fd, dF_dtau_with_err

log = logging.getLogger(__name__)

CACHE_FORMAT_VERSION = 1

THM1_TAUS = (0.05, 0.1, 0.25, 0.4, 0.5, 0.75)
THM1_TS = (0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 14.1347251417)
GRAD_TAUS = (0.1, 0.3, 0.45)
GRAD_TS = (0.0, 1.0, 5.0)
SANDWICH_TAUS = (0.1, 0.3)
SANDWICH_TS = (0.5, 2.0, 5.0)
GROWTH_TAUS = (0.1, 0.3, 0.5, 1.0)
POSITIVITY_TAUS = (0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5)
JPLUS_BOUND = 0.04525351
A0_FACTOR_CONST = 7.176026
MARGIN_FACTOR = 10.0


# -- cache ------------------------------------------------------------------------

def _cache_name(tau: float, tol: float, j_max: int) -> str:
    return f"moments_tau{round(float(tau), 12)!r}_tol{float(tol)!r}_j{int(j_max)}.json"


def _pairs(d: Dict[int, Tuple[float, float]]):
    return [[int(j), v, e] for j, (v, e) in sorted(d.items())]


def _table_payload(table: MomentTable) -> dict:
    return {
        "format_version": CACHE_FORMAT_VERSION,
        "tau": table.tau,
        "tol": table.tol_used,
        "j_max": table.j_max,
        "S": _pairs(table.S),
        "A": _pairs(table.A),
        "Jplus": list(table.Jplus),
        "JminusLog": list(table.JminusLog),
        "I1": list(table.I1),
        "I2": list(table.I2),
        "I3": list(table.I3),
    }


def _checksum(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def cache_store(table: MomentTable, cache_dir) -> Path:
    """Write ``table`` atomically (temp file in the same directory, then rename)."""
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    payload = _table_payload(table)
    doc = dict(payload, checksum=_checksum(payload))
    path = cache_dir / _cache_name(table.tau, table.tol_used, table.j_max)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, sort_keys=True, indent=1)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _pair(x) -> Tuple[float, float]:
    return float(x[0]), float(x[1])


def cache_load(tau: float, tol: float, j_max: int, cache_dir, strict: bool = False) -> Optional[MomentTable]:
    """The cached table, or ``None`` if absent, stale or corrupt.

    A stale ``format_version`` or a checksum mismatch is reported with a
    warning (or :class:`CacheError` when ``strict``) and the file is ignored.
    """
    path = Path(cache_dir) / _cache_name(tau, tol, j_max)
    if not path.exists():
        return None

    def reject(msg):
        if strict:
            raise CacheError(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=3)
        return None

    try:
        doc = json.loads(path.read_text())
    except (OSError, ValueError) as exc:
        return reject(f"unreadable cache file {path}: {exc}")
    if not isinstance(doc, dict):
        return reject(f"malformed cache file {path}")
    version = doc.get("format_version")
    if version != CACHE_FORMAT_VERSION:
        return reject(f"cache file {path} has format_version {version!r}, "
                      f"expected {CACHE_FORMAT_VERSION}; ignoring it")
    checksum = doc.pop("checksum", None)
    if checksum != _checksum(doc):
        return reject(f"checksum mismatch in cache file {path}; ignoring it")
    if doc["tau"] != float(tau) or doc["j_max"] != int(j_max) or doc["tol"] != float(tol):
        return reject(f"cache file {path} does not match the requested key")
    return MomentTable(
        tau=doc["tau"],
        j_max=doc["j_max"],
        S={int(j): (float(v), float(e)) for j, v, e in doc["S"]},
        A={int(j): (float(v), float(e)) for j, v, e in doc["A"]},
        Jplus=_pair(doc["Jplus"]),
        JminusLog=_pair(doc["JminusLog"]),
        I1=_pair(doc["I1"]),
        I2=_pair(doc["I2"]),
        I3=_pair(doc["I3"]),
        tol_used=doc["tol"],
        meta={"source": str(path)},
    )


def get_table(tau: float, j_max: int, tol: float, cache_dir=None) -> MomentTable:
    """Load from the cache when possible, else build (and store if a cache is configured)."""
    if cache_dir is not None:
        table = cache_load(tau, tol, j_max, cache_dir)
        if table is not None:
            return table
    table = build_moment_table(tau, j_max, tol)
    if cache_dir is not None:
        cache_store(table, cache_dir)
    return table


# -- scan ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScanConfig:
    """A sweep over an open uniform tau grid and a list of n.

    The grid is ``tau_min + i (tau_max - tau_min) / (steps + 1)``,
    ``i = 1..steps``; the defaults give ``i/128`` for ``i = 1..63``.
    ``tau_list`` overrides the grid. ``runtime_ms`` is written as 0 unless
    ``record_runtime`` is set, so that repeated scans stay byte-identical.
    """

    tau_min: float = 0.0
    tau_max: float = 0.5
    steps: int = 63
    n_list: Tuple[int, ...] = (1, 2)
    tol: float = 1e-10
    digits: int = 14
    threads: int = 1
    cache_dir: Optional[str] = None
    out_format: str = "csv"
    tau_list: Optional[Tuple[float, ...]] = None
    j_max: Optional[int] = None
    record_runtime: bool = False
    retry: bool = True

    def __post_init__(self):
        if self.tau_list is None:
            if not (0 <= self.tau_min < self.tau_max):
                raise DomainError(f"need 0 <= tau_min < tau_max, got {self.tau_min}, {self.tau_max}")
            if self.steps < 1:
                raise DomainError(f"steps must be >= 1, got {self.steps}")
        elif len(self.tau_list) == 0:
            raise DomainError("tau_list is empty")
        if not self.n_list or min(self.n_list) < 1:
            raise DomainError(f"n_list must hold integers >= 1, got {self.n_list!r}")
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol!r}")
        if self.digits < 1:
            raise DomainError(f"digits must be >= 1, got {self.digits}")
        if self.out_format not in ("csv", "jsonl"):
            raise DomainError(f"out_format must be csv or jsonl, got {self.out_format!r}")

    def taus(self) -> List[float]:
        if self.tau_list is not None:
            return [float(t) for t in self.tau_list]
        width = (self.tau_max - self.tau_min) / (self.steps + 1)
        return [self.tau_min + i * width for i in range(1, self.steps + 1)]

    def table_jmax(self) -> int:
        return self.j_max if self.j_max is not None else 4 * max(self.n_list)


@dataclass
class ScanRecord:
    tau: float
    n: int
    coeffs: dict
    positivity: str
    margin: float
    n_real: int
    discr: float
    discr_closed: Optional[float] = None
    corollary_gap: Optional[float] = None
    runtime_ms: int = 0
    s_min: float = math.nan
    min_value: float = math.nan
    min_err: float = math.nan
    stable: bool = False
    n_real_hermite: int = -1
    n_distinct: int = -1
    n_distinct_hermite: int = -1
    retried: bool = False
    error: Optional[str] = None
    tol: float = math.nan
    digits: int = 0

    def reproducer(self) -> str:
        return (f"xitheta --tol {self.tol!r} --digits {self.digits} scan "
                f"--tau-list {self.tau!r} --n-list {self.n}")


def _classify(value: float, err: float, n_real: int) -> str:
    if value - MARGIN_FACTOR * err > 0:
        return "positive"
    if value + MARGIN_FACTOR * err < 0 and n_real >= 1:
        return "violated"
    return "inconclusive"


def _evaluate(tau: float, n: int, tol: float, digits: int, j_max: int, cache_dir) -> ScanRecord:
    table = get_table(tau, max(j_max, 4 * n), tol, cache_dir)
    cs = build_coefficients(table, n)
    f = polynomial_from(cs)
    s_min, value = polyalg.min_nonneg_s(f)
    err = float(f.err_in_s(s_min))
    q = polyalg.quantize(f, digits)
    sturm = polyalg.count_with_stability(f.values, f.errs, digits, "sturm")
    herm = polyalg.hermite_signature_count(q)
    discr = float(polyalg.discriminant(q))
    closed = gap = None
    if n == 1:
        a0, a1, a2 = (float(v) for v in f.values)
        closed = float(polyalg.discriminant_biquadratic(a0, a1, a2))
        if a0 >= 0 and a2 >= 0:
            gap = polyalg.corollary_iv_gap(a0, a1, a2).gap
    return ScanRecord(
        tau=float(tau), n=int(n), coeffs=cs.as_dict(),
        positivity=_classify(value, err, sturm.n_real),
        margin=value - MARGIN_FACTOR * err, n_real=sturm.n_real,
        discr=discr, discr_closed=closed, corollary_gap=gap,
        s_min=float(s_min), min_value=float(value), min_err=err, stable=sturm.stable,
        n_real_hermite=herm.n_real, n_distinct=sturm.n_distinct_complex,
        n_distinct_hermite=herm.n_distinct_complex,
        tol=float(tol), digits=int(digits),
    )


def evaluate_cell(tau: float, n: int, tol: float = 1e-10, digits: int = 14, j_max: int = 8,
                  cache_dir=None, retry: bool = True) -> ScanRecord:
    """One scan row. Failures are recorded in the row, never raised."""
    start = time.perf_counter()
    try:
        rec = _evaluate(tau, n, tol, digits, j_max, cache_dir)
        if rec.positivity == "inconclusive" and retry:
            rec = _evaluate(tau, n, tol / 100, digits + 8, j_max, cache_dir)
            rec.retried = True
    except (XiThetaError, ArithmeticError, ValueError) as exc:
        rec = ScanRecord(float(tau), int(n), {}, "inconclusive", math.nan, -1, math.nan,
                         error=f"{type(exc).__name__}: {exc}", tol=float(tol), digits=int(digits))
    rec.runtime_ms = int(round(1000 * (time.perf_counter() - start)))
    return rec


def _cell(args):
    return evaluate_cell(*args)


def run_scan(cfg: ScanConfig) -> List[ScanRecord]:
    """One record per (tau, n), in grid order, whatever the worker count."""
    jobs = [(tau, n, cfg.tol, cfg.digits, cfg.table_jmax(), cfg.cache_dir, cfg.retry)
            for tau in cfg.taus() for n in cfg.n_list]
    if cfg.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            records = list(pool.map(_cell, jobs))
    else:
        records = [_cell(job) for job in jobs]
    if not cfg.record_runtime:
        for rec in records:
            rec.runtime_ms = 0
    for rec in records:
        if rec.positivity == "violated":
            log.warning("violated row tau=%r n=%d; reproduce with: %s", rec.tau, rec.n, rec.reproducer())
    return records


def a_columns(n_list: Sequence[int]) -> List[str]:
    return [f"a{k}" for k in range(2 * max(n_list) - 1)]


def csv_header(n_list: Sequence[int]) -> List[str]:
    return (["tau", "n"] + a_columns(n_list) + ["trail_odd", "trail_even", "positivity", "margin",
                                               "n_real", "discr", "discr_closed", "corollary_gap",
                                               "runtime_ms"])


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def record_row(rec: ScanRecord, n_list: Sequence[int]) -> Dict[str, object]:
    """The documented column set of one record, in order; absent values are ``None``."""
    a = rec.coeffs.get("a", [])
    row: Dict[str, object] = {"tau": rec.tau, "n": rec.n}
    for k, name in enumerate(a_columns(n_list)):
        row[name] = a[k] if k < len(a) else None
    row.update(
        trail_odd=rec.coeffs.get("trail_odd"),
        trail_even=rec.coeffs.get("trail_even"),
        positivity=rec.positivity,
        margin=rec.margin,
        n_real=rec.n_real,
        discr=rec.discr,
        discr_closed=rec.discr_closed,
        corollary_gap=rec.corollary_gap,
        runtime_ms=rec.runtime_ms,
    )
    return row


def to_csv(records: Sequence[ScanRecord], n_list: Sequence[int]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header(n_list))
    for rec in records:
        writer.writerow([_fmt(v) for v in record_row(rec, n_list).values()])
    return buf.getvalue()


def _json_safe(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def to_jsonl(records: Sequence[ScanRecord], n_list: Sequence[int]) -> str:
    lines = []
    for rec in records:
        row = {k: _json_safe(v) for k, v in record_row(rec, n_list).items()}
        lines.append(json.dumps(row))
    return "\n".join(lines) + "\n"


def write_records(records: Sequence[ScanRecord], cfg: ScanConfig, out=None) -> str:
    text = to_csv(records, cfg.n_list) if cfg.out_format == "csv" else to_jsonl(records, cfg.n_list)
    if out is not None:
        Path(out).write_text(text)
    return text


# -- verification suites -------------------------------------------------------

def _rel(a: float, b: float) -> float:
    return abs(a - b) / (1.0 + abs(b))


def _point_report(point, lhs, rhs, rel_err, ok) -> dict:
    return {"point": point, "lhs": lhs, "rhs": rhs, "rel_err": rel_err, "pass": bool(ok)}


def _compute_tol(rel_tol: float) -> float:
    # computations run two orders below the pass threshold
    return max(rel_tol / 100, 1e-13)


def verify_thm1(tau_list=THM1_TAUS, t_list=THM1_TS, rel_tol: float = 1e-8, tol: Optional[float] = None,
                table_hook: Optional[Callable[[MomentTable], MomentTable]] = None) -> List[dict]:
    """The modulus identity on a grid: direct xi against the moment representation.

    ``table_hook`` may replace each moment table before use (fault injection).
    """
    tol = _compute_tol(rel_tol) if tol is None else tol
    out = []
    # t^2 I1 and the C term cancel down to F, so the table carries a t_max^2 margin
    table_tol = max(tol / max(1.0, max(t * t for t in t_list)), 1e-15)
    for tau in tau_list:
        table = build_moment_table(tau, 2, table_tol)
        if table_hook is not None:
            table = table_hook(table)
        wmax = max(2 * ((t * t + tau * tau + 0.25) ** 2 - tau * tau) for t in t_list)
        C, Ce, _, _ = cosine_kernels(tau, list(t_list), tol / (4 * max(1.0, wmax)))
        for t, c, ce in zip(t_list, C, Ce):
            lhs, _ = F_direct_with_err(tau, t, min(tol, 1e-13))
            rhs, _ = F_rhs_with_err(tau, t, table, tol, C=(float(c), float(ce)))
            rel = _rel(rhs, lhs)
            out.append(_point_report([tau, t], lhs, rhs, rel, rel <= rel_tol))
    return out


def verify_grad(tau_list=GRAD_TAUS, t_list=GRAD_TS, rel_tol: float = 1e-5, tol: float = 1e-12) -> List[dict]:
    """Closed-form dF/dtau against a central difference of the direct modulus."""
    out = []
    for tau in tau_list:
        table = build_moment_table(tau, 2, tol)
        a0, a0e = coeff_a0(table)
        C, Ce, D, De = cosine_kernels(tau, list(t_list), tol / 1e3)
        for i, t in enumerate(t_list):
            lhs, _ = dF_dtau_with_err(tau, t, table, a0, tol, C=(C[i], Ce[i]), D=(D[i], De[i]), a0_err=a0e)
            rhs = dF_dtau_fd(tau, t)
            rel = abs(lhs - rhs) / abs(rhs)
            out.append(_point_report([tau, t], lhs, rhs, rel, rel <= rel_tol))
    return out


def _suite(name: str, checks: List[dict]) -> dict:
    worst = max((c.get("rel_err", 0.0) or 0.0) for c in checks) if checks else 0.0
    return {"name": name, "pass": all(c["pass"] for c in checks), "worst": worst,
            "checks": checks}


def _strict(point, lower, upper, err) -> dict:
    """``lower < upper`` with room for the combined error."""
    gap = upper - lower
    return {"point": point, "lhs": lower, "rhs": upper, "gap": gap, "err": err,
            "rel_err": 0.0, "pass": bool(gap > err)}


def suite_sandwich(tol: float = 1e-15) -> Tuple[dict, dict, dict]:
    """Cosine sandwiches for C and D, and dominance of f over dF/dtau.

    At small t the truncation gaps are tiny (about 1e-14 at t = 0.5, n = 2),
    so the moments are taken close to roundoff.
    """
    sand_c, sand_d, dominance = [], [], []
    ts = list(SANDWICH_TS)
    for tau in SANDWICH_TAUS:
        table = build_moment_table(tau, 8, tol)
        a0, a0e = coeff_a0(table)
        C, Ce, D, De = cosine_kernels(tau, ts, tol / 1e3)
        S = [table.S[2 * k] for k in range(4)]
        A = [table.A[2 * k] for k in range(4)]
        for n in (1, 2):
            f = build_f(table, n)
            for i, t in enumerate(ts):
                lo, lo_e = alternating_sum(S, t, 2 * n - 1)
                hi, hi_e = alternating_sum(S, t, 2 * n - 2)
                c, ce = float(C[i]), float(Ce[i])
                sand_c.append(_strict([tau, t, n, "lower"], lo, c, lo_e + ce))
                sand_c.append(_strict([tau, t, n, "upper"], c, hi, hi_e + ce))
                dh, dh_e = alternating_sum(A, t, 2 * n - 2)
                d, de = float(D[i]), float(De[i])
                sand_d.append(_strict([tau, t, n, "upper"], d, dh, dh_e + de))
                g, ge = dF_dtau_with_err(tau, t, table, a0, tol, C=(c, ce), D=(d, de), a0_err=a0e)
                fv = float(f(t))
                fe = float(f.err_in_s(t * t))
                dominance.append(_strict([tau, t, n], g, fv, ge + fe))
    return _suite("sandwich_C", sand_c), _suite("bound_D", sand_d), _suite("dominance", dominance)


def moment_growth_bound(tau: float, k: int) -> float:
    a = abs(tau)
    return (math.pi ** 4 * (math.gamma(a + 0.5) + math.gamma(0.5)) * math.factorial(int(a) + 3)
            / (36 * math.e) * 2 ** (2 * k - 1.5) * math.factorial(k))


def suite_moment_growth(tol: float = 1e-12) -> dict:
    checks = []
    for tau in GROWTH_TAUS:
        table = build_moment_table(tau, 16, tol)
        for k in range(9):
            v, e = table.S[2 * k]
            lhs = v / 4 ** k
            checks.append(_strict([tau, k], lhs, moment_growth_bound(tau, k), e / 4 ** k))
    return _suite("moment_growth", checks)


def theta_sum_2pi() -> float:
    """``sum_{n>=1} exp(-2 pi n^2)``."""
    return psi_series(2.0, ToleranceSpec(1e-18)).value


def suite_positivity_constants(tol: float = 1e-12) -> dict:
    checks = []
    const = A0_FACTOR_CONST / 4 * theta_sum_2pi()
    prev = None
    for tau in POSITIVITY_TAUS:
        table = build_moment_table(tau, 2, tol)
        jp, jpe = table.Jplus
        checks.append(_strict([tau, "Jplus"], jp, JPLUS_BOUND, jpe))
        _, second = a0_factors(table)
        checks.append(_strict([tau, "a0_factor"], tau * const, second,
                              4 * tau * jpe + (0.25 - tau * tau) * table.JminusLog[1]))
        a0, a0e = coeff_a0(table)
        checks.append(_strict([tau, "a0"], 0.0, a0, a0e))
        A0, A0e = table.A[0]
        checks.append(_strict([tau, "a_tau1(2)"], 0.0, A0, A0e))
        if prev is not None:
            checks.append(_strict([tau, "a_tau1(2) increasing"], prev[0], A0, prev[1] + A0e))
        prev = (A0, A0e)
    return _suite("positivity_constants", checks)


def suite_theta_modular(points: int = 41, bound: float = 1e-12) -> dict:
    """Direct series on both sides of the modular identity, on a log grid in [0.01, 100]."""
    spec = ToleranceSpec(1e-17, 100_000)
    checks = []
    for y in np.logspace(-2, 2, points):
        y = float(y)
        lhs = psi_series(y, spec).value
        rhs = (psi_series(1 / y, spec).value + 0.5) / math.sqrt(y) - 0.5
        res = abs(lhs - rhs)
        checks.append({"point": [y], "lhs": lhs, "rhs": rhs, "rel_err": res, "pass": res < bound})
    return _suite("theta_modular", checks)


def suite_symmetry(tol: float = 1e-12, tau: float = 0.3, j_max: int = 8) -> dict:
    checks = []
    plus = build_moment_table(tau, j_max, tol)
    minus = build_moment_table(-tau, j_max, tol)
    zero = build_moment_table(0.0, j_max, tol)
    floor = 1e-15
    for j in range(0, j_max + 1, 2):
        (sp, spe), (sm, sme) = plus.S[j], minus.S[j]
        d = abs(sp - sm)
        checks.append({"point": [tau, j, "S even"], "lhs": sp, "rhs": sm, "rel_err": d / sp,
                       "pass": d <= 2 * (spe + sme) + floor * sp})
        (ap, ape), (am, ame) = plus.A[j], minus.A[j]
        d = abs(ap + am)
        checks.append({"point": [tau, j, "A odd"], "lhs": ap, "rhs": -am, "rel_err": d / abs(ap),
                       "pass": d <= 2 * (ape + ame) + floor * abs(ap)})
        a0, a0e = zero.A[j]
        checks.append({"point": [0.0, j, "A(0)=0"], "lhs": a0, "rhs": 0.0, "rel_err": abs(a0),
                       "pass": abs(a0) <= 2 * a0e + floor * zero.S[j][0]})
    return _suite("symmetry", checks)


def suite_polyalg(count: int = 200) -> dict:
    P = polyalg.RationalPolynomial
    known = [
        ("t^4-5t^2+4", P((4, 0, -5, 0, 1)), 4, 4),
        ("t^4+1", P((1, 0, 0, 0, 1)), 0, 4),
        ("(t^2-1)^2", P((1, 0, -2, 0, 1)), 2, 2),
        ("(t^2+1)(t^2+4)", P((4, 0, 5, 0, 1)), 0, 4),
    ]
    checks = []
    for name, p, nr, nd in known:
        for counter in (polyalg.sturm_count, polyalg.hermite_signature_count):
            r = counter(p)
            checks.append({"point": [name, r.method], "lhs": [r.n_real, r.n_distinct_complex],
                           "rhs": [nr, nd], "rel_err": 0.0,
                           "pass": (r.n_real, r.n_distinct_complex) == (nr, nd)})
    st = polyalg.selftest(count)
    checks.append({"point": ["selftest", count], "lhs": len(st["mismatches"]), "rhs": 0,
                   "rel_err": 0.0, "pass": st["pass"]})
    return _suite("polyalg", checks)


def first_zero_probe(lo: float = 14.0, hi: float = 14.3) -> dict:
    """Minimise F(0, t) on [lo, hi]; the first zero of xi sits near 14.1347."""
    res = minimize_scalar(lambda t: F_direct(0.0, t), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-9})
    ref = F_direct(0.0, lo)
    return {"t_min": float(res.x), "F_min": float(res.fun), "F_ref": ref,
            "pass": abs(res.x - 14.1347) <= 5e-4 and res.fun < 1e-10 * ref}


def verify_all(tol: float = 1e-8, table_hook=None) -> dict:
    """Every suite, with per-suite pass flags and worst residuals."""
    ctol = _compute_tol(tol)
    suites = [
        _suite("thm1", verify_thm1(rel_tol=tol, table_hook=table_hook)),
        _suite("grad", verify_grad()),
        *suite_sandwich(min(ctol, 1e-15)),
        suite_moment_growth(min(ctol, 1e-12)),
        suite_positivity_constants(min(ctol, 1e-12)),
        suite_theta_modular(),
        suite_symmetry(min(ctol, 1e-12)),
        suite_polyalg(),
    ]
    probe = first_zero_probe()
    suites.append({"name": "first_zero", "pass": probe["pass"], "worst": abs(probe["t_min"] - 14.1347),
                   "checks": [probe]})
    return {"tol": tol, "pass": all(s["pass"] for s in suites),
            "suites": {s["name"]: s for s in suites}}
