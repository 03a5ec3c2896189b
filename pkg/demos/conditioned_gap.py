"""Conditioning on an empty rightmost interval, and the joint thinned tail.

With the weight on (x_1, oo) set to zero the determinant ratio
F(x; s)/F(x_1; 0) is the generating functional of the process conditioned
on having no particle beyond x_1.  Its expansion uses shifted ingredients:
a drift mu_0 with an extra |x_1| sqrt(x_1 - x)/pi term and a variance
sigma_0^2 corrected by -log[2(x_1-x)/(x_1-2x)]/(2 pi^2).  The same formulas
give the joint tail of (largest particle, largest thinned particle).

Run:  python demos/conditioned_gap.py
"""

import numpy as np

from airy_gap import (
    GapConfig,
    log_E0,
    log_E0_asym,
    log_F_m1_s0,
    log_det,
    thinned_joint_tail_asym,
)

TAU = (-1.0, -2.0)
B = -0.2
S2 = float(np.exp(2 * np.pi * B))

print(f"conditioned two-point functional, tau = {TAU}, beta_2 = {B}i")
print(f"{'r':>5} {'log E0 (determinants)':>24} {'expansion':>16} {'difference':>12}")
for r in (4.0, 6.0, 8.0, 10.0):
    x = tuple(r * t for t in TAU)
    numeric = log_E0(GapConfig(x, (0.0, S2)))
    closed = log_E0_asym(x, (1j * B,)).total
    print(f"{r:5.1f} {numeric:24.8f} {closed:16.8f} {abs(numeric - closed):12.2e}")

print()
print("joint tail: P(no particle past x1, no surviving particle past x2)")
print(f"{'(x1, x2)':>16} {'log P (determinant)':>22} {'expansion':>16} {'difference':>12}")
for x1, x2 in ((-6.0, -12.0), (-8.0, -16.0)):
    numeric = log_det(GapConfig((x1, x2), (0.0, S2))).log_f
    closed = thinned_joint_tail_asym(x1, x2, 1j * B)
    print(f"({x1:6.1f},{x2:7.1f}) {numeric:22.8f} {closed:16.8f} {abs(numeric - closed):12.2e}")

print()
print("the joint-tail expansion is exactly log F(x1; 0) plus the conditioned")
print("expansion; the first summand alone is", f"{log_F_m1_s0(-8.0):.6f}", "at x1 = -8.")
