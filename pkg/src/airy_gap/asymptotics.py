"""Closed-form large-gap expansions for the Airy-kernel determinants.

All jump parameters beta are purely imaginary; writing beta = i*b with real b
makes every term manifestly real, which is how the formulas are evaluated
here.  The two equivalent statements of each expansion (product of one-point
factors versus fully explicit exponent) are implemented separately so their
algebraic identity is a meaningful cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._constants import EULER_GAMMA, PI_SQ, TWO_PI, ZETA_PRIME_MINUS_ONE
from .specfun import SingularityError, log_barnes_g

LOG2 = math.log(2.0)


def _imag_part(beta, name: str = "beta") -> float:
    """Validate a purely imaginary jump parameter and return its imaginary part."""
    b = complex(beta)
    if abs(b.real) > 1e-12 * max(1.0, abs(b.imag)):
        raise ValueError(f"{name} must be purely imaginary, got {beta!r}")
    return b.imag


def _imag_vector(betas, name: str = "beta") -> np.ndarray:
    return np.array([_imag_part(v, name) for v in np.atleast_1d(betas)])


def _check_ordered_negative(x) -> np.ndarray:
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs >= 0.0):
        raise ValueError("endpoints must be negative")
    if np.any(np.diff(xs) >= 0.0):
        raise ValueError("endpoints must be strictly decreasing")
    return xs


# ---------------------------------------------------------------------------
# parameter maps
# ---------------------------------------------------------------------------

def beta_from_s(s) -> tuple[complex, ...]:
    """Jump parameters from thinning weights.

    beta_j = i log(s_j / s_{j+1}) / (2 pi) with s_{m+1} = 1.  If s_1 = 0 the
    first parameter is undefined and the returned tuple holds beta_2..beta_m.
    """
    svals = [float(v) for v in np.atleast_1d(s)]
    if any(v < 0.0 or v > 1.0 for v in svals):
        raise ValueError("weights must lie in [0, 1]")
    if any(v == 0.0 for v in svals[1:]):
        raise ValueError("only s_1 may vanish")
    ext = svals + [1.0]
    start = 1 if svals[0] == 0.0 else 0
    return tuple(1j * math.log(ext[j] / ext[j + 1]) / TWO_PI
                 for j in range(start, len(svals)))


def s_from_beta(beta, s1_is_zero: bool = False) -> tuple[float, ...]:
    """Thinning weights from jump parameters; inverse of beta_from_s.

    With s1_is_zero the input is beta_2..beta_m and the output gains a
    leading exact 0.
    """
    bs = _imag_vector(beta)
    out = []
    acc = 0.0
    for b in bs[::-1]:
        acc += TWO_PI * b  # log s_j = log s_{j+1} + log ratio; ratio = e^{2 pi b}
        out.append(math.exp(acc))
    out.reverse()
    if s1_is_zero:
        out.insert(0, 0.0)
    if any(v > 1.0 + 1e-12 for v in out):
        raise ValueError("beta vector corresponds to weights above 1")
    return tuple(min(v, 1.0) for v in out)


# ---------------------------------------------------------------------------
# building blocks
# ---------------------------------------------------------------------------

def mu(x: float) -> float:
    """Leading counting-function mean (2/(3 pi)) |x|^(3/2), x < 0."""
    if x >= 0.0:
        raise ValueError("mu requires x < 0")
    return 2.0 / (3.0 * math.pi) * abs(x) ** 1.5


def sigma2(x: float) -> float:
    """Counting-function variance slope (3/(4 pi^2)) log|4x|, x < 0."""
    if x >= 0.0:
        raise ValueError("sigma2 requires x < 0")
    return 3.0 / (4.0 * PI_SQ) * math.log(abs(4.0 * x))


def sigma_cov(tau_k: float, tau_j: float) -> float:
    """Limiting covariance of half-line counts at scaled endpoints.

    (1/(2 pi^2)) log[(sqrt|tau_k| + sqrt|tau_j|)^2 / (tau_k - tau_j)] for
    0 > tau_k > tau_j; scale-invariant, logarithmically divergent at
    coinciding arguments.
    """
    if not 0.0 > tau_k > tau_j:
        raise ValueError("requires 0 > tau_k > tau_j")
    if tau_k - tau_j < 1e-12:
        raise SingularityError("covariance diverges logarithmically as tau_k -> tau_j")
    num = (math.sqrt(abs(tau_k)) + math.sqrt(abs(tau_j))) ** 2
    return math.log(num / (tau_k - tau_j)) / (2.0 * PI_SQ)


def barnes_pair(beta) -> float:
    """log[G(1 + beta) G(1 - beta)] for purely imaginary beta (real-valued)."""
    b = _imag_part(beta)
    if b == 0.0:
        return 0.0
    return 2.0 * log_barnes_g(1.0 + 1j * b).real


# ---------------------------------------------------------------------------
# one-point tails
# ---------------------------------------------------------------------------

def log_F_m1_s0(x: float) -> float:
    """Tail of the hard gap log F(x; 0) = log2/24 + zeta'(-1) - log|x|/8 - |x|^3/12."""
    if x >= 0.0:
        raise ValueError("log_F_m1_s0 requires x < 0")
    ax = abs(x)
    return LOG2 / 24.0 + ZETA_PRIME_MINUS_ONE - math.log(ax) / 8.0 - ax ** 3 / 12.0


def log_E_m1(x: float, beta) -> float:
    """Thinned one-point tail.

    log[G(1+beta)G(1-beta)] - (3/2) beta^2 log|4x| - (4 i beta / 3) |x|^(3/2),
    real-valued for beta in i R.
    """
    if x >= 0.0:
        raise ValueError("log_E_m1 requires x < 0")
    b = _imag_part(beta)
    return (barnes_pair(beta)
            + 1.5 * b * b * math.log(abs(4.0 * x))
            + (4.0 / 3.0) * b * abs(x) ** 1.5)


# ---------------------------------------------------------------------------
# multi-point expansions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticBreakdown:
    """Additive pieces of an expansion, kept separate for inspection.

    total is always the exact sum of the other fields; every piece is real
    because the jump parameters are purely imaginary.
    """

    drift_term: float
    variance_term: float
    cross_term: float
    barnes_term: float
    tw_term: float = 0.0

    @property
    def total(self) -> float:
        return (self.drift_term + self.variance_term + self.cross_term
                + self.barnes_term + self.tw_term)


def log_E_asym(x, beta) -> AsymptoticBreakdown:
    """Explicit multi-point expansion of log E(x; beta).

    Drift: -2 pi i sum beta_j mu(x_j); variance: -2 pi^2 sum beta_j^2
    sigma2(x_j); cross: -4 pi^2 sum_{k<j} beta_j beta_k Sigma(x_k, x_j)
    (evaluated at the endpoints directly, using scale invariance); plus the
    Barnes G pair terms.
    """
    xs = _check_ordered_negative(x)
    bs = _imag_vector(beta)
    if xs.size != bs.size:
        raise ValueError("x and beta must have matching length")
    drift = TWO_PI * float(sum(b * mu(v) for b, v in zip(bs, xs)))
    variance = 2.0 * PI_SQ * float(sum(b * b * sigma2(v) for b, v in zip(bs, xs)))
    cross = 4.0 * PI_SQ * float(
        sum(bs[k] * bs[j] * sigma_cov(xs[k], xs[j])
            for k in range(xs.size) for j in range(k + 1, xs.size)))
    barnes = float(sum(barnes_pair(1j * b) for b in bs))
    return AsymptoticBreakdown(drift, variance, cross, barnes)


def log_E_product_form(x, beta) -> float:
    """Product-of-one-point-tails statement of the same expansion.

    sum_j log E(x_j; beta_j) plus the pair prefactor
    -4 pi^2 sum_{k<j} beta_j beta_k Sigma(x_k, x_j); agrees with
    log_E_asym(...).total to rounding, which the tests pin at 1e-12.
    """
    xs = _check_ordered_negative(x)
    bs = _imag_vector(beta)
    if xs.size != bs.size:
        raise ValueError("x and beta must have matching length")
    one_point = float(sum(log_E_m1(v, 1j * b) for v, b in zip(xs, bs)))
    pair = 4.0 * PI_SQ * float(
        sum(bs[k] * bs[j] * sigma_cov(xs[k], xs[j])
            for k in range(xs.size) for j in range(k + 1, xs.size)))
    return one_point + pair


def mu0(x: float, x1: float) -> float:
    """Conditioned drift mu(x - x1) + (|x1|/pi) |x1 - x|^(1/2), for x < x1 < 0."""
    if not x < x1 < 0.0:
        raise ValueError("requires x < x1 < 0")
    return mu(x - x1) + abs(x1) / math.pi * math.sqrt(x1 - x)


def sigma2_0(x: float, x1: float) -> float:
    """Conditioned variance sigma2(x - x1) - (1/(2 pi^2)) log[2(x1-x)/(x1-2x)]."""
    if not x < x1 < 0.0:
        raise ValueError("requires x < x1 < 0")
    return sigma2(x - x1) - math.log(2.0 * (x1 - x) / (x1 - 2.0 * x)) / (2.0 * PI_SQ)


def log_E0_asym(x, beta0) -> AsymptoticBreakdown:
    """Explicit expansion of the conditioned functional log E0(x; beta_2..m).

    Same structure as log_E_asym with the shifted ingredients mu0, sigma2_0
    and Sigma0(tau_k, tau_j) = Sigma(tau_k - tau_1, tau_j - tau_1).
    """
    xs = _check_ordered_negative(x)
    if xs.size < 2:
        raise ValueError("conditioned expansion needs m >= 2")
    bs = _imag_vector(beta0, "beta0")
    if bs.size != xs.size - 1:
        raise ValueError("beta0 must have length m - 1")
    x1 = float(xs[0])
    rest = xs[1:]
    drift = TWO_PI * float(sum(b * mu0(v, x1) for b, v in zip(bs, rest)))
    variance = 2.0 * PI_SQ * float(sum(b * b * sigma2_0(v, x1) for b, v in zip(bs, rest)))
    cross = 4.0 * PI_SQ * float(
        sum(bs[k] * bs[j] * sigma_cov(rest[k] - x1, rest[j] - x1)
            for k in range(rest.size) for j in range(k + 1, rest.size)))
    barnes = float(sum(barnes_pair(1j * b) for b in bs))
    return AsymptoticBreakdown(drift, variance, cross, barnes)


def log_E0_product_form(x, beta0) -> float:
    """Conditioned expansion through the shifted unconditioned one:

    log E(y; beta0) with y_j = x_j - x_1, plus per-point factors
    beta_j^2 log[2(x1-x_j)/(x1-2x_j)] - 2 i beta_j |x1| |x1-x_j|^(1/2).
    """
    xs = _check_ordered_negative(x)
    if xs.size < 2:
        raise ValueError("conditioned expansion needs m >= 2")
    bs = _imag_vector(beta0, "beta0")
    if bs.size != xs.size - 1:
        raise ValueError("beta0 must have length m - 1")
    x1 = float(xs[0])
    y = xs[1:] - x1
    shifted = log_E_asym(y, [1j * b for b in bs]).total
    extra = float(sum(
        -b * b * math.log(2.0 * (x1 - v) / (x1 - 2.0 * v))
        + 2.0 * b * abs(x1) * math.sqrt(x1 - v)
        for b, v in zip(bs, xs[1:])))
    return shifted + extra


# ---------------------------------------------------------------------------
# moments, interval variance, joint tail
# ---------------------------------------------------------------------------

def moment_asym(x: float) -> tuple[float, float]:
    """(mean, variance) of the count on (x, inf) as x -> -inf.

    mean = mu(x); variance = sigma2(x) + (1 + gamma_E)/(2 pi^2).
    """
    return mu(x), sigma2(x) + (1.0 + EULER_GAMMA) / (2.0 * PI_SQ)


def var_interval_asym(r: float, tau1: float, tau2: float) -> float:
    """Variance of the count on (r tau2, r tau1), 0 > tau1 > tau2, r > 0.

    (3/(2 pi^2)) log r + (3/(4 pi^2)) log|16 tau1 tau2|
    + (1 + gamma_E)/pi^2 - 2 Sigma(tau1, tau2).
    """
    if r <= 0.0:
        raise ValueError("r must be positive")
    if not 0.0 > tau1 > tau2:
        raise ValueError("requires 0 > tau1 > tau2")
    return (1.5 / PI_SQ * math.log(r)
            + 0.75 / PI_SQ * math.log(abs(16.0 * tau1 * tau2))
            + (1.0 + EULER_GAMMA) / PI_SQ
            - 2.0 * sigma_cov(tau1, tau2))


def thinned_joint_tail_asym(x1: float, x2: float, beta) -> float:
    """log of the joint tail P(largest thinned particle < x2, largest < x1).

    log F(x1; 0) + log E(x2 - x1; beta)
    - beta^2 log[(x1 - 2 x2)/(2 (x1 - x2))] - 2 i beta |x1| |x1 - x2|^(1/2).
    """
    if not 0.0 > x1 > x2:
        raise ValueError("requires 0 > x1 > x2")
    b = _imag_part(beta)
    return (log_F_m1_s0(x1)
            + log_E_m1(x2 - x1, beta)
            + b * b * math.log((x1 - 2.0 * x2) / (2.0 * (x1 - x2)))
            + 2.0 * b * abs(x1) * math.sqrt(x1 - x2))
