"""Theta series, its modular symmetry, and xi from the theta integral."""
import numpy as np

from xitheta import F_direct, psi, psi_series, xi_direct

# psi(y) = sum_{n>=1} exp(-pi n^2 y); the series is cheap for y >= 1
for y in (0.05, 0.5, 1.0, 2.0, 10.0):
    r = psi(y)
    print(f"psi({y:5}) = {float(r.value):.16e}  err {r.err:.1e}  terms {r.terms}")

# the modular identity 2 psi(1/y) + 1 = sqrt(y) (2 psi(y) + 1)
ys = np.logspace(-1, 1, 9)
res = [abs(2 * psi_series(1 / y).value + 1 - np.sqrt(y) * (2 * psi_series(y).value + 1)) for y in ys]
print("max modular residual on [0.1, 10]:", max(res))

# xi at the centre and near the first zero on the critical line
print("xi(1/2) =", xi_direct(0.5).real)
for t in (14.0, 14.134725, 14.3):
    print(f"F(0, {t}) = {F_direct(0.0, t):.3e}")
