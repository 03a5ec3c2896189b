"""Counting statistics of the Airy point process by kernel traces.

The number of particles on (x, oo) has mean ~ (2/(3 pi))|x|^(3/2) and
variance ~ (3/(4 pi^2)) log|4x| + (1 + gamma)/(2 pi^2); counts on two
half-lines are log-correlated with limiting covariance Sigma(tau_1, tau_2).
All the left-hand sides here are plain trace integrals of the Airy kernel,
so this doubles as an independent check of the expansion constants.

Run:  python demos/counting_statistics.py
"""

import math

from airy_gap import (
    cov_count,
    cov_halflines,
    mean_count,
    moment_asym,
    sigma_cov,
    var_count,
    var_interval_asym,
)

print("half-line counts N_(x, oo)")
print(f"{'x':>6} {'mean (trace)':>14} {'mean (asym)':>12} {'var (trace)':>12} {'var (asym)':>11}")
for x in (-4.0, -7.0, -10.0, -13.0):
    mean_t = mean_count([(x, math.inf)])
    var_t = var_count([(x, math.inf)])
    mean_a, var_a = moment_asym(x)
    print(f"{x:6.1f} {mean_t:14.6f} {mean_a:12.6f} {var_t:12.6f} {var_a:11.6f}")

print()
print("log-correlation of two half-lines, tau = (-1, -2)")
print(f"{'r':>5} {'covariance (trace)':>20} {'Sigma(tau1,tau2)':>18}")
for r in (5.0, 10.0, 15.0):
    cov_t = cov_halflines(-r, -2.0 * r)
    print(f"{r:5.1f} {cov_t:20.6f} {sigma_cov(-1.0, -2.0):18.6f}")

print()
print("interval count N_(r tau2, r tau1) at r = 10: variance decomposition")
var_direct = var_count([(-20.0, -10.0)])
var_closed = var_interval_asym(10.0, -1.0, -2.0)
print(f"  trace: {var_direct:.6f}   closed form: {var_closed:.6f}")

A, B = [(-9.0, -5.0)], [(-5.0, -2.0)]
lhs = var_count(A + B)
rhs = var_count(A) + var_count(B) + 2.0 * cov_count(A, B)
print(f"  bilinearity check Var(A u B) - Var(A) - Var(B) - 2 Cov: {lhs - rhs:.2e}")
