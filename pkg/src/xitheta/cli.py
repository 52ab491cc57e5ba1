"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure (or a scan row
that is not ``positive``), 3 precision failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

import mpmath

from . import polyalg, scan
from .coeffs import build_coefficients, polynomial_from
from .errors import CacheError, CapacityError, DomainError, PrecisionError
from .theta import EXTENDED_DPS, ToleranceSpec, psi
from .xi import xi_with_err

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_PRECISION = 0, 1, 2, 3


def default_cache_dir() -> str:
    return os.environ.get("XITHETA_CACHE", str(Path.home() / ".cache" / "xitheta"))


class _Parser(argparse.ArgumentParser):
    # no prefix matching: ``--t`` must not resolve to ``--tol``
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str):
    return [float(x) for x in text.replace(",", " ").split()]


def _ints(text: str):
    return [int(x) for x in text.replace(",", " ").split()]


GLOBAL_DEFAULTS = {
    "tol": 1e-10,
    "digits": None,
    "threads": os.cpu_count() or 1,
    "cache_dir": None,
    "format": "csv",
    "out": None,
    "extended": False,
    "verbose": False,
}


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS, allow_abbrev=False)
    p.add_argument("--tol", type=float, help="absolute tolerance (default 1e-10)")
    p.add_argument("--digits", type=int, help="quantization digits (default 14, 24 with --extended)")
    p.add_argument("--threads", type=int, help="worker processes (default: CPU count)")
    p.add_argument("--cache-dir", help="moment-table cache (default $XITHETA_CACHE or ~/.cache/xitheta)")
    p.add_argument("--format", choices=("csv", "jsonl"), help="scan output format (default csv)")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--extended", action="store_true", help="extended-precision theta and quantization")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = _Parser(prog="xitheta", parents=[common],
                     description="Theta-kernel representation of |xi|^2 and the polynomials f_{tau,n}.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("psi", parents=[common], help="theta series psi(y)")
    p.add_argument("--y", type=float, required=True)

    p = sub.add_parser("xi", parents=[common], help="xi(sigma + i t) from the theta integral")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--t", type=float, required=True)

    p = sub.add_parser("moments", parents=[common], help="moment table at one tau")
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--jmax", type=int, default=8)
    p.add_argument("--no-cache", action="store_true")

    p = sub.add_parser("coeffs", parents=[common], help="coefficients of f_{tau,n}")
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("poly", parents=[common], help="root counts, discriminants, minima")
    p.add_argument("action", choices=("count", "disc", "min", "selftest"))
    p.add_argument("--tau", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--method", choices=("sturm", "hermite"), default="sturm")
    p.add_argument("--count", type=int, default=200, help="selftest polynomial count")
    p.add_argument("--seed", type=int, default=20240601, help="selftest seed")

    p = sub.add_parser("scan", parents=[common], help="sweep a tau grid over n")
    p.add_argument("--tau-min", type=float, default=0.0)
    p.add_argument("--tau-max", type=float, default=0.5)
    p.add_argument("--steps", type=int, default=63)
    p.add_argument("--tau-list", type=_floats, help="explicit tau values (overrides the grid)")
    p.add_argument("--n-list", type=_ints, default=[1, 2])
    p.add_argument("--no-retry", action="store_true", help="skip the tightened retry of inconclusive rows")
    p.add_argument("--record-runtime", action="store_true",
                   help="fill runtime_ms (output is then no longer reproducible byte for byte)")

    p = sub.add_parser("verify", parents=[common], help="verification suites")
    p.add_argument("suite", choices=("thm1", "grad", "all"))
    p.add_argument("--tau-list", type=_floats)
    p.add_argument("--t-list", type=_floats)
    p.add_argument("--rel-tol", type=float)
    return parser


def _options(args):
    for k, v in GLOBAL_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.digits is None:
        args.digits = 24 if args.extended else 14
    if args.cache_dir is None:
        args.cache_dir = default_cache_dir()
    return args


def _json_default(x):
    if hasattr(x, "item"):
        return x.item()
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def _clean(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def _emit(args, obj=None, text=None):
    if text is None:
        text = json.dumps(_clean(obj), indent=2, default=_json_default) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _table(args, tau, j_max):
    return scan.get_table(tau, j_max, args.tol, args.cache_dir)


def cmd_psi(args):
    r = psi(args.y, ToleranceSpec(args.tol), extended=args.extended)
    digits = EXTENDED_DPS if args.extended else 17
    _emit(args, {"y": r.y, "value": float(r.value), "err": r.err, "terms": r.terms,
                 "value_str": mpmath.nstr(r.value, digits)})
    return EXIT_OK


def cmd_xi(args):
    s = complex(args.sigma, args.t)
    z, err = xi_with_err(s, args.tol)
    _emit(args, {"s": [s.real, s.imag], "xi": [z.real, z.imag], "err": err})
    return EXIT_OK


def cmd_moments(args):
    if args.no_cache:
        from .moments import build_moment_table

        table = build_moment_table(args.tau, args.jmax, args.tol)
    else:
        table = _table(args, args.tau, args.jmax)
    _emit(args, scan._table_payload(table))
    return EXIT_OK


def cmd_coeffs(args):
    table = _table(args, args.tau, 4 * args.n)
    _emit(args, build_coefficients(table, args.n).as_dict())
    return EXIT_OK


def _polynomial(args):
    if args.tau is None or args.n is None:
        raise DomainError("poly count|disc|min need --tau and --n")
    table = _table(args, args.tau, 4 * args.n)
    return polynomial_from(build_coefficients(table, args.n))


def cmd_poly(args):
    if args.action == "selftest":
        report = polyalg.selftest(args.count, args.seed)
        _emit(args, report)
        return EXIT_OK if report["pass"] else EXIT_VERIFY
    f = _polynomial(args)
    head = {"tau": args.tau, "n": args.n, "s_coeffs": f.values.tolist(), "errs": f.errs.tolist()}
    if args.action == "count":
        r = polyalg.count_with_stability(f.values, f.errs, args.digits, args.method)
        head.update(n_real=r.n_real, n_distinct_complex=r.n_distinct_complex, stable=r.stable,
                    method=r.method)
    elif args.action == "disc":
        q = polyalg.quantize(f, args.digits)
        d = polyalg.discriminant(q)
        head.update(discr=float(d), discr_exact=str(d))
        if args.n == 1:
            head["discr_closed"] = float(polyalg.discriminant_biquadratic(*f.values.tolist()))
    else:
        s, v = polyalg.min_nonneg_s(f)
        head.update(s_min=s, t_min=math.sqrt(s), value=v, err=float(f.err_in_s(s)))
    _emit(args, head)
    return EXIT_OK


def cmd_scan(args):
    cfg = scan.ScanConfig(
        tau_min=args.tau_min, tau_max=args.tau_max, steps=args.steps,
        n_list=tuple(args.n_list), tol=args.tol, digits=args.digits, threads=args.threads,
        cache_dir=args.cache_dir, out_format=args.format,
        tau_list=tuple(args.tau_list) if args.tau_list else None,
        record_runtime=args.record_runtime, retry=not args.no_retry,
    )
    records = scan.run_scan(cfg)
    text = scan.to_csv(records, cfg.n_list) if cfg.out_format == "csv" else scan.to_jsonl(records, cfg.n_list)
    _emit(args, text=text)
    bad = [r for r in records if r.positivity != "positive"]
    for r in bad:
        print(f"{r.positivity} row tau={r.tau!r} n={r.n}"
              f"{' (' + r.error + ')' if r.error else ''}; reproduce: {r.reproducer()}", file=sys.stderr)
    return EXIT_VERIFY if bad else EXIT_OK


def cmd_verify(args):
    if args.suite == "all":
        report = scan.verify_all(args.rel_tol or 1e-8)
        ok = report["pass"]
    else:
        kw = {}
        if args.tau_list:
            kw["tau_list"] = args.tau_list
        if args.t_list:
            kw["t_list"] = args.t_list
        if args.rel_tol:
            kw["rel_tol"] = args.rel_tol
        fn = scan.verify_thm1 if args.suite == "thm1" else scan.verify_grad
        report = fn(**kw)
        ok = all(r["pass"] for r in report)
    _emit(args, report)
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {"psi": cmd_psi, "xi": cmd_xi, "moments": cmd_moments, "coeffs": cmd_coeffs,
            "poly": cmd_poly, "scan": cmd_scan, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = _options(parser.parse_args(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except PrecisionError as exc:
        print(f"precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (DomainError, CapacityError, CacheError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
