"""Special-function layer: Gauss-Legendre rules, Airy functions, the complex
gamma family, Barnes G, modified Bessel / Hankel pairs, and Whittaker
functions at mu = 0.

Everything here is double precision except the extended (80-bit) real-axis
Airy evaluator, which exists because deep gap determinants push eigenvalues
of the discretized operator within ~1e-12 of 1 and double-rounded kernel
entries are then not accurate enough.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from ._constants import EULER_GAMMA, LOG_2PI, zeta_minus_one


class DomainError(ValueError):
    """Argument outside the supported evaluation region."""


class PoleError(ValueError):
    """Evaluation at a pole."""


class SingularityError(ValueError):
    """Evaluation at a non-pole singularity (branch point, log blow-up)."""


class NumericalError(RuntimeError):
    """A numerical procedure failed (factorization, fit, conditioning)."""


# ---------------------------------------------------------------------------
# Gauss-Legendre rules
# ---------------------------------------------------------------------------

MAX_RULE_ORDER = 4096


@dataclass(frozen=True, eq=False)
class QuadRule:
    """Gauss-Legendre rule on (-1, 1): strictly increasing nodes, positive
    weights summing to 2, symmetric under node negation."""

    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def mapped(self, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights transplanted to the interval (a, b)."""
        half = 0.5 * (b - a)
        return half * self.nodes + 0.5 * (a + b), half * self.weights


def _legendre_with_derivative(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """P_n(x) and P_n'(x) by the three-term recurrence."""
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


def gauss_legendre_rule(n: int, dtype=np.float64) -> QuadRule:
    """n-point Gauss-Legendre rule via Newton iteration on P_n.

    Newton starts from the Tricomi estimate cos(pi (k + 3/4)/(n + 1/2)) and
    is run to ~10 ulp in the requested dtype, so the same code serves the
    float128 determinant path.
    """
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_RULE_ORDER:
        raise ValueError(f"rule order must be an integer in [1, {MAX_RULE_ORDER}], got {n!r}")
    if n == 1:
        return QuadRule(1, np.zeros(1, dtype=dtype), np.full(1, 2.0, dtype=dtype))
    k = np.arange(n, dtype=dtype)
    x = np.cos(np.pi * (k + 0.75) / (n + 0.5))
    tol = 10 * np.finfo(dtype).eps
    for _ in range(100):
        p, dp = _legendre_with_derivative(n, x)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < tol:
            break
    else:  # pragma: no cover - Newton converges in < 10 sweeps
        raise RuntimeError("Gauss-Legendre Newton iteration failed to converge")
    _, dp = _legendre_with_derivative(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    x, w = x[::-1].copy(), w[::-1].copy()
    # enforce the exact antisymmetry the analytic rule has
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return QuadRule(int(n), x, w)


# ---------------------------------------------------------------------------
# Airy functions
# ---------------------------------------------------------------------------

AIRY_MAX_ABS = 60.0

#: Ai(0) = 3^(-2/3)/Gamma(2/3) and Ai'(0) = -3^(-1/3)/Gamma(1/3)
AIRY_AT_ZERO = (0.3550280538878172, -0.2588194037928068)


def airy_ai(z):
    """Airy function pair (Ai(z), Ai'(z)) for complex z, |z| <= 60.

    Accepts scalars or arrays; scalars come back as python complex.
    """
    zc = np.asarray(z, dtype=complex)
    if np.any(np.abs(zc) > AIRY_MAX_ABS):
        raise DomainError(f"airy_ai supports |z| <= {AIRY_MAX_ABS}")
    ai, aip, _, _ = _sp.airy(zc)
    if np.isscalar(z) or np.ndim(z) == 0:
        return complex(ai), complex(aip)
    return ai, aip


# --- extended-precision real-axis evaluator --------------------------------

_LD = np.longdouble
_ASYM_ANCHOR = 12.0
_MARCH_STEP = 0.25
_MARCH_ORDER = 30


def _airy_asymptotic_ld(t):
    """(Ai, Ai') at real t >= 12 from the large-argument expansion, float128.

    The series is truncated at its smallest term; at t = 12 that term is
    ~1e-24 relative, far below the 80-bit epsilon.
    """
    t = _LD(t)
    zeta = _LD(2.0) / _LD(3.0) * t ** _LD(1.5)
    u = _LD(1.0)
    su = _LD(1.0)
    sv = _LD(1.0)
    sign = _LD(1.0)
    prev = abs(u)
    for k in range(1, 80):
        u = u * _LD((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) / _LD((2 * k - 1) * 216 * k)
        term = u / zeta ** _LD(k)
        if abs(term) > prev:
            break
        prev = abs(term)
        sign = -sign
        su += sign * term
        sv += sign * term * _LD(6 * k + 1) / _LD(1 - 6 * k)
        if abs(term) < _LD(1e-26):
            break
    pref = np.exp(-zeta) / (_LD(2.0) * np.sqrt(_LD(np.pi)))
    ai = pref * su / t ** _LD(0.25)
    aip = -pref * sv * t ** _LD(0.25)
    return ai, aip


def _airy_taylor_step(x0, y, yp, h):
    """Advance (Ai, Ai') from x0 to x0 + h with the ODE y'' = x y."""
    a = np.empty(_MARCH_ORDER + 1, dtype=_LD)
    a[0] = y
    a[1] = yp
    a[2] = x0 * a[0] / _LD(2.0)
    for k in range(1, _MARCH_ORDER - 1):
        a[k + 2] = (x0 * a[k] + a[k - 1]) / _LD((k + 1) * (k + 2))
    ynew = a[_MARCH_ORDER]
    ypnew = a[_MARCH_ORDER] * _LD(_MARCH_ORDER)
    for k in range(_MARCH_ORDER - 1, 0, -1):
        ynew = ynew * h + a[k]
        ypnew = ypnew * h + a[k] * _LD(k)
    ynew = ynew * h + a[0]
    return ynew, ypnew


def airy_ai_real_xp(x):
    """(Ai, Ai') on the real axis in extended precision (float128 arrays).

    Values at or above 12 come from the asymptotic expansion; below, a
    Taylor-series march of the Airy ODE walks left from the anchor at 12.
    Marching leftward is the well-conditioned direction (the recessive
    solution grows relative to the dominant one), so the relative error
    stays at a few units of the 80-bit epsilon down to x ~ -60.
    """
    xs = np.atleast_1d(np.asarray(x, dtype=_LD))
    ai = np.empty_like(xs)
    aip = np.empty_like(xs)
    order = np.argsort(xs)[::-1]
    cur_x = _LD(_ASYM_ANCHOR)
    cur = None
    for idx in order:
        t = xs[idx]
        if t >= _ASYM_ANCHOR:
            ai[idx], aip[idx] = _airy_asymptotic_ld(t)
            continue
        if cur is None:
            cur = _airy_asymptotic_ld(cur_x)
        while cur_x - t > _MARCH_STEP:
            cur = _airy_taylor_step(cur_x, cur[0], cur[1], -_LD(_MARCH_STEP))
            cur_x -= _LD(_MARCH_STEP)
        y, yp = _airy_taylor_step(cur_x, cur[0], cur[1], t - cur_x)
        ai[idx], aip[idx] = y, yp
        cur = (y, yp)
        cur_x = t
    if np.ndim(x) == 0:
        return ai[0], aip[0]
    return ai, aip


# ---------------------------------------------------------------------------
# Gamma family
# ---------------------------------------------------------------------------

def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == round(z.real)


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z)."""
    zc = complex(z)
    if _is_nonpositive_integer(zc):
        raise PoleError(f"log_gamma pole at z = {zc}")
    return complex(_sp.loggamma(zc))


def digamma(z) -> complex:
    """Digamma psi(z) = Gamma'(z)/Gamma(z)."""
    zc = complex(z)
    if _is_nonpositive_integer(zc):
        raise PoleError(f"digamma pole at z = {zc}")
    return complex(_sp.digamma(zc))


def log_barnes_g(z) -> complex:
    """log G(z) for the Barnes G-function, Re z > 0 and |z - 1| <= 2.

    G satisfies G(z+1) = Gamma(z) G(z) with G(1) = 1.  The recurrence pulls
    Re z into [0.5, 1.5); the remaining offset w = z - 1 goes through the
    Taylor expansion of log G(1+w), written with zeta(k)-1 so the log(1+w)
    part is resummed exactly and the series converges for |w| < 2.
    """
    zc = complex(z)
    if not (zc.real > 0.0 and abs(zc - 1.0) <= 2.0):
        raise DomainError(f"log_barnes_g supports Re z > 0 and |z - 1| <= 2, got {zc}")
    shift = 0.0 + 0.0j
    while zc.real >= 1.5:
        zc -= 1.0
        shift += log_gamma(zc)
    while zc.real < 0.5:
        shift -= log_gamma(zc)
        zc += 1.0
    w = zc - 1.0
    if abs(w) < 1e-300:
        return shift
    gsum = (0.5 * LOG_2PI - 0.5) * w - 0.5 * (1.0 + EULER_GAMMA) * w * w \
        + np.log1p(w) - w + 0.5 * w * w
    # sum_{n>=3} (-1)^(n-1) (zeta(n-1) - 1) w^n / n, iterated as (w/2)^n to
    # stay in range even close to |w| = 2
    q = 0.5 * w
    qn = q * q  # q^2, loop starts at n = 3
    total = 0.0 + 0.0j
    for n in range(3, 2000):
        qn *= q
        c = zeta_minus_one(n - 1) * 2.0 ** n
        term = (-1.0) ** (n - 1) * c * qn / n
        total += term
        if abs(term) < 1e-19 * (1.0 + abs(total)):
            break
    else:
        raise DomainError(f"Barnes G series did not converge for z = {z} (|z-1| too close to 2)")
    return shift + gsum + total


# ---------------------------------------------------------------------------
# Bessel family
# ---------------------------------------------------------------------------

BESSEL_MAX_ABS = 80.0


def bessel_modified_I0K0(z):
    """(I0, K0, I0', K0') at complex z with |arg z| < pi, |z| <= 80."""
    zc = complex(z)
    if zc == 0 or (zc.real < 0 and zc.imag == 0):
        raise DomainError("bessel_modified_I0K0 requires |arg z| < pi")
    if abs(zc) > BESSEL_MAX_ABS:
        raise DomainError(f"bessel_modified_I0K0 supports |z| <= {BESSEL_MAX_ABS}")
    i0 = complex(_sp.iv(0, zc))
    k0 = complex(_sp.kv(0, zc))
    i0p = complex(_sp.iv(1, zc))
    k0p = -complex(_sp.kv(1, zc))
    return i0, k0, i0p, k0p


def hankel_H0(z, kind: int):
    """(H0, H0') for the Hankel function of the given kind (1 or 2)."""
    zc = complex(z)
    if zc == 0:
        raise SingularityError("hankel_H0 is singular at z = 0")
    if abs(zc) > BESSEL_MAX_ABS:
        raise DomainError(f"hankel_H0 supports |z| <= {BESSEL_MAX_ABS}")
    if kind == 1:
        return complex(_sp.hankel1(0, zc)), -complex(_sp.hankel1(1, zc))
    if kind == 2:
        return complex(_sp.hankel2(0, zc)), -complex(_sp.hankel2(1, zc))
    raise ValueError(f"kind must be 1 or 2, got {kind!r}")


# ---------------------------------------------------------------------------
# Kummer / Whittaker functions (mu = 0, i.e. the logarithmic b = 1 case)
# ---------------------------------------------------------------------------

WHITTAKER_MAX_ABS = 60.0
_KUMMER_MAX_TERMS = 600


def kummer_m_b1(a, z) -> complex:
    """Confluent hypergeometric M(a, 1, z) by its ascending series."""
    a = complex(a)
    z = complex(z)
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    for k in range(_KUMMER_MAX_TERMS):
        term *= (a + k) * z / ((k + 1) * (k + 1))
        total += term
        if abs(term) < 1e-18 * (1.0 + abs(total)):
            return total
    raise DomainError(f"Kummer M series did not converge for |z| = {abs(z):.3g}")


def kummer_u_b1(a, z, log_z=None) -> complex:
    """Second Kummer solution U(a, 1, z), logarithmic case.

    U(a,1,z) = -(1/Gamma(a)) sum_k (a)_k/(k!)^2 z^k [log z + psi(a+k) - 2 psi(k+1)].

    `log_z` selects the branch; passing log|z| + i*theta with theta outside
    (-pi, pi] evaluates the analytic continuation (the series apart from the
    explicit logarithm is entire).  The k = 0 term is rewritten through
    a*psi(a) = a*psi(1+a) - 1 so a -> 0 is a smooth limit with U(0,1,z) = 1.
    """
    a = complex(a)
    z = complex(z)
    if log_z is None:
        if z == 0 or (z.real < 0 and z.imag == 0):
            raise DomainError("kummer_u_b1 principal branch requires z off (-inf, 0]")
        log_z = complex(np.log(z))
    inv_gamma_1pa = complex(_sp.rgamma(1.0 + a))  # 1/Gamma(1+a), entire
    pref = -a * inv_gamma_1pa                     # -1/Gamma(a)
    psi1 = complex(_sp.digamma(1.0 + a)) if not _is_nonpositive_integer(1.0 + a) else 0.0
    # k = 0 term, pole of psi(a) cancelled analytically
    total = pref * (log_z + psi1 + 2.0 * EULER_GAMMA) + inv_gamma_1pa
    poch = 1.0 + 0.0j
    zk = 1.0 + 0.0j
    for k in range(_KUMMER_MAX_TERMS):
        poch *= a + k
        zk *= z / ((k + 1) * (k + 1))
        coeff = poch * zk
        term = pref * coeff * (log_z + complex(_sp.digamma(a + k + 1.0)) - 2.0 * complex(_sp.digamma(k + 2.0)))
        total += term
        if abs(coeff) * (abs(log_z) + 10.0) < 1e-18 * (1.0 + abs(total)):
            return total
    raise DomainError(f"Kummer U series did not converge for |z| = {abs(z):.3g}")


def kummer_m_b1_asym(a, z) -> complex:
    """M(a, 1, z) for large |z| via the exact U-connection.

    M is entire, so no branch bookkeeping: with sigma = sign(Im z),
    M(a,1,z) = e^(sigma a pi i) U(a,1,z)/Gamma(1-a)
             + e^(sigma (a-1) pi i) e^z U(1-a,1,-z)/Gamma(a),
    both U on principal branches by their large-argument series.  Needed
    because the ascending series cancels like e^|z| once Re z < 0 and
    |(a)_k| grows like k!.
    """
    a = complex(a)
    z = complex(z)
    sigma = 1.0 if z.imag >= 0.0 else -1.0
    u1 = kummer_u_b1_asym(a, z)
    u2 = kummer_u_b1_asym(1.0 - a, -z)
    return (np.exp(1j * np.pi * sigma * a) * complex(_sp.rgamma(1.0 - a)) * u1
            + np.exp(1j * np.pi * sigma * (a - 1.0) + z) * complex(_sp.rgamma(a)) * u2)


def kummer_u_b1_asym(a, z, log_z=None) -> complex:
    """U(a, 1, z) by the large-argument expansion z^(-a) sum (a)_k^2 / (k! (-z)^k).

    Truncated at the smallest term, so the error is ~e^(-|z|); intended for
    |z| >= ~18 where the ascending series starts losing digits to the
    e^(Re z) cancellation.  `log_z` selects the branch of z^(-a).
    """
    a = complex(a)
    z = complex(z)
    if log_z is None:
        log_z = complex(np.log(z))
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    prev = 1.0
    for k in range(400):
        term *= -(a + k) * (a + k) / ((k + 1) * z)
        if abs(term) >= prev:
            break
        prev = abs(term)
        total += term
        if prev < 1e-18 * abs(total):
            break
    return np.exp(-a * log_z) * total


_ASYM_SWITCH_ABS = 18.0


def _kummer_u_auto(a, z, log_z) -> complex:
    """U(a,1,z) choosing ascending vs large-z series by |z|."""
    if abs(z) >= _ASYM_SWITCH_ABS:
        return kummer_u_b1_asym(a, z, log_z)
    return kummer_u_b1(a, z, log_z)


def _kummer_m_auto(a, z) -> complex:
    """M(a,1,z) choosing ascending vs large-z evaluation by |z|."""
    if abs(z) >= _ASYM_SWITCH_ABS:
        return kummer_m_b1_asym(a, z)
    return kummer_m_b1(a, z)


def whittaker_pair_mu0(kappa, z):
    """Whittaker pair (M_{kappa,0}(z), W_{kappa,0}(z)) on the principal branch.

    Both are e^(-z/2) sqrt(z) times M(a,1,z) resp. U(a,1,z) with a = 1/2 - kappa.
    """
    zc = complex(z)
    if zc == 0 or (zc.real < 0 and zc.imag == 0):
        raise DomainError("whittaker_pair_mu0 requires z off the branch cut (-inf, 0]")
    if abs(zc) > WHITTAKER_MAX_ABS:
        raise DomainError(f"whittaker_pair_mu0 supports |z| <= {WHITTAKER_MAX_ABS}")
    a = 0.5 - complex(kappa)
    pref = np.exp(-0.5 * zc) * np.sqrt(zc)
    m_val = kummer_m_b1(a, zc) if abs(zc) <= 20.0 else kummer_m_b1_asym(a, zc)
    return pref * m_val, pref * _kummer_u_auto(a, zc, complex(np.log(zc)))
