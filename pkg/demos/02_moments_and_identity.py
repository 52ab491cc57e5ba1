"""Moment table at one tau and the modulus identity it feeds."""
import numpy as np

from xitheta import F_direct, F_rhs, build_moment_table

tau = 0.25
table = build_moment_table(tau, j_max=8, tol=1e-12)

print("moments S_j, A_j:")
for j in range(0, 9, 2):
    s, a = table.S[j][0], table.A[j][0]
    print(f"  j={j}: S={s:+.6e}  A={a:+.6e}")
print("J+ =", table.Jplus[0], " I1 =", table.I1[0])

# the moment representation reproduces 4|xi|^2 off the critical line
print(" t     F_direct           F_rhs              diff")
for t in (0.0, 1.0, 5.0, 10.0):
    d, r = F_direct(tau, t), F_rhs(tau, t, table)
    print(f"{t:4.1f}  {d:.15e}  {r:.15e}  {abs(d - r):.1e}")
