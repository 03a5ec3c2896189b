"""The three model Riemann-Hilbert solutions and their verification surfaces.

Each 2x2 model solution (Airy, Bessel, confluent hypergeometric) is pieced
together per sector from classical special functions and must satisfy three
kinds of identities: determinant identically 1, prescribed multiplicative
jumps across its rays, and an explicit first correction matrix in the
large-z expansion.  None of these are enforced by construction here -- the
jump across the negative real axis, for instance, is a genuine connection
formula between different special-function branches -- so the residuals
measure the correctness of the whole assembly.

Run:  python demos/model_solutions.py
"""

import numpy as np

from airy_gap import extract_asym_coeff, jump_residual, phi_ai, phi_be, phi_hg
from airy_gap.parametrix import (
    AIRY_RAYS,
    BESSEL_RAYS,
    PHI_AI_1,
    PHI_BE_1,
    hg_logderivative_exact,
    hg_logderivative_limit,
    phi_hg1_reference,
)

print("jump residuals ||Phi_+ - Phi_- J||_max at two radii per ray")
for model, rays in (("airy", sorted(AIRY_RAYS)), ("bessel", sorted(BESSEL_RAYS))):
    worst = max(jump_residual(model, ray, t) for ray in rays for t in (1.0, 3.0))
    print(f"  {model:7}: {worst:.2e} over {len(rays)} rays")
BETA = 0.3j
worst = max(jump_residual("chg", ray, t, BETA) for ray in range(1, 7) for t in (0.8, 3.0))
print(f"  chg    : {worst:.2e} over 6 rays (beta = {BETA})")

print()
print("unimodularity |det Phi - 1| on a sample fan")
for name, fn in (("airy", phi_ai), ("bessel", phi_be), ("chg", lambda z: phi_hg(z, BETA))):
    worst = max(fn(r * np.exp(1j * t)).det_residual
                for r in (0.5, 2.0, 6.0) for t in (0.9, 2.3, -1.3, -2.8))
    print(f"  {name:7}: {worst:.2e}")

print()
print("large-z correction matrices, least-squares fit vs closed forms")
print(f"  airy  : max error {np.abs(extract_asym_coeff('airy') - PHI_AI_1).max():.2e}")
print(f"  bessel: max error {np.abs(extract_asym_coeff('bessel') - PHI_BE_1).max():.2e}")
for b in (0.1j, 0.3j):
    err = np.abs(extract_asym_coeff("chg", b) - phi_hg1_reference(b)).max()
    print(f"  chg   : max error {err:.2e} at beta = {b}")

print()
print("origin limit of [Phi^(-1) d/dbeta Phi]_21 vs the digamma closed form")
for b in (0.2j, 0.35j):
    numeric = hg_logderivative_limit(b)
    exact = hg_logderivative_exact(b)
    print(f"  beta = {b}: numeric {numeric:.8f}, exact {exact:.8f}, "
          f"difference {abs(numeric - exact):.2e}")
