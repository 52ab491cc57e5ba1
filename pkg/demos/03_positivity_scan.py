"""Build f_{tau,n}, count its real roots exactly, and scan a small tau grid."""
from xitheta import ScanConfig, build_coefficients, build_moment_table, run_scan
from xitheta.coeffs import polynomial_from
from xitheta.polyalg import count_with_stability, min_nonneg_s
from xitheta.scan import to_csv

table = build_moment_table(0.2, j_max=8, tol=1e-12)
for n in (1, 2):
    f = polynomial_from(build_coefficients(table, n))
    print(f"n={n} coefficients in s=t^2:", f.values)
    rc = count_with_stability(f.values, f.errs, 14, "sturm")
    s, v = min_nonneg_s(f)
    print(f"  real roots {rc.n_real}  stable {rc.stable}  min over s>=0: {v:.6e} at s={s:.4f}")

cfg = ScanConfig(tau_list=(0.05, 0.1, 0.2, 0.3, 0.4), n_list=(1, 2))
records = run_scan(cfg)
print(to_csv(records, cfg.n_list))
print("all positive:", all(r.positivity == "positive" for r in records))
