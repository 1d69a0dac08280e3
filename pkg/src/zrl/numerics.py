"""Shared numerical kernels.

Four groups of tools live here:

* gamma_fn / log_gamma: fixed-coefficient rational (Lanczos-type)
  approximation of the Gamma function on the half-plane Re z >= 0.5,
  extended by reflection resp. by the recurrence.
* hurwitz_zeta and hurwitz_zeta_s_derivative_at_0: Euler-Maclaurin
  evaluation of zeta(s, z) = sum_{v>=0} (z+v)^(-s) continued to s != 1,
  and the termwise-differentiated expansion giving d/ds zeta(s, z) at
  s = 0 without finite differences.  The derivative equals
  log(Gamma(z)/sqrt(2*pi)) for the branch assembled from principal
  logarithms of the individual terms.
* integrate: adaptive Gauss-Legendre quadrature for vectorized
  complex-valued integrands.
* Integer utilities: Moebius function, divisor lists, a prime sieve and
  Kronecker symbols at primes.

All summations that feed accuracy-critical results use compensated
(Kahan-Neumaier) accumulation in a fixed order, so results are
reproducible bit for bit.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .config import PrecisionConfig
from .errors import ConvergenceError, DomainError, PoleError

TWO_PI = 2.0 * math.pi
SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

# ---------------------------------------------------------------------------
# compensated summation


def compensated_sum(terms: Iterable[complex]) -> complex:
    """Neumaier-compensated sum of complex terms in iteration order."""
    sr = si = cr = ci = 0.0
    for term in terms:
        x = complex(term)
        t = sr + x.real
        if abs(sr) >= abs(x.real):
            cr += (sr - t) + x.real
        else:
            cr += (x.real - t) + sr
        sr = t
        t = si + x.imag
        if abs(si) >= abs(x.imag):
            ci += (si - t) + x.imag
        else:
            ci += (x.imag - t) + si
        si = t
    return complex(sr + cr, si + ci)


# ---------------------------------------------------------------------------
# Gamma

# Rational approximation coefficients (g = 7, 9 terms).  Relative error of
# the resulting Gamma values is below 1e-13 on the half-plane Re z >= 0.5.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _lanczos_series(z: complex) -> complex:
    acc = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (z + i)
    return acc


def gamma_fn(z: complex) -> complex:
    """Gamma(z) for complex z; raises PoleError at 0, -1, -2, ..."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"gamma_fn pole at z = {z}")
    if z.real < 0.5:
        # reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return math.pi / (cmath.sin(math.pi * z) * gamma_fn(1.0 - z))
    t = z + _LANCZOS_G - 0.5
    return SQRT_TWO_PI * t ** (z - 0.5) * cmath.exp(-t) * _lanczos_series(z - 1.0)


def log_gamma(z: complex, cfg: PrecisionConfig | None = None) -> complex:
    """A continuous branch of log Gamma on the plane cut along (-inf, 0].

    Built from the same termwise-differentiated expansion as
    hurwitz_zeta_s_derivative_at_0, so exp(log_gamma(z)) reproduces
    gamma_fn(z) while the imaginary part varies continuously off the cut.
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"log_gamma pole at z = {z}")
    if z.imag == 0.0 and z.real < 0.0:
        raise DomainError("log_gamma is not defined on the cut (-inf, 0]")
    cfg = cfg or PrecisionConfig()
    return hurwitz_zeta_s_derivative_at_0(z, cfg) + 0.5 * math.log(TWO_PI)


# ---------------------------------------------------------------------------
# Bernoulli numbers (exact, cached)


@lru_cache(maxsize=None)
def _bernoulli_fraction(n: int) -> Fraction:
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    acc = Fraction(0)
    for j in range(n):
        acc += Fraction(math.comb(n + 1, j)) * _bernoulli_fraction(j)
    return -acc / (n + 1)


def bernoulli_number(n: int) -> float:
    """B_n as a float (B_1 = -1/2 convention)."""
    if n < 0:
        raise DomainError("Bernoulli index must be nonnegative")
    return float(_bernoulli_fraction(n))


# ---------------------------------------------------------------------------
# Hurwitz zeta via Euler-Maclaurin


def _hurwitz_direct_terms(s: complex, z: complex, n_terms: int) -> complex:
    return compensated_sum(
        cmath.exp(-s * cmath.log(z + v)) for v in range(n_terms)
    )


def _choose_cutoff(s: complex, z: complex, cfg: PrecisionConfig) -> int:
    """Number of direct terms before the asymptotic tail takes over.

    The Bernoulli tail decays once 2*pi*|z+N| comfortably exceeds
    |s| + 2*B.  For Re s >= -1 the configured cutoff (inflated with
    |Im s|) is used; for real parts below -1 the minimal stable N is
    taken instead, because a long direct sum would cancel
    catastrophically against the huge tail terms.
    """
    decay = (abs(s) + 2.0 * cfg.bernoulli_terms + 6.0) / TWO_PI + 2.0
    n_min = max(0, int(math.ceil(decay - z.real)))
    if s.real >= -1.0:
        return max(n_min, cfg.series_cutoff, int(math.ceil(10.0 * abs(s.imag))))
    return n_min


def hurwitz_zeta(s: complex, z: complex, cfg: PrecisionConfig | None = None) -> complex:
    """zeta(s, z) = sum_{v>=0} (z+v)^(-s), continued to all s != 1.

    Powers use the principal branch of log(z+v).  z must avoid
    0, -1, -2, ... so that no term degenerates.
    """
    s = complex(s)
    z = complex(z)
    cfg = cfg or PrecisionConfig()
    if s == 1.0:
        raise PoleError("hurwitz_zeta pole at s = 1")
    if _is_nonpositive_integer(z):
        raise PoleError(f"hurwitz_zeta requires z not in {{0, -1, -2, ...}}, got {z}")

    n_terms = _choose_cutoff(s, z, cfg)
    for attempt in range(2):
        value, last_term = _hurwitz_euler_maclaurin(s, z, n_terms, cfg)
        if abs(last_term) <= 0.1 * cfg.target_abs_error:
            return value
        n_terms = 4 * max(n_terms, 1)
    raise ConvergenceError(
        f"Euler-Maclaurin tail for zeta({s}, {z}) stalled at |term| = {abs(last_term):.3e}",
        best_estimate=value,
    )


def _hurwitz_euler_maclaurin(
    s: complex, z: complex, n_terms: int, cfg: PrecisionConfig
) -> tuple[complex, complex]:
    head = _hurwitz_direct_terms(s, z, n_terms)
    t = z + n_terms
    log_t = cmath.log(t)
    tail = [cmath.exp((1.0 - s) * log_t) / (s - 1.0), 0.5 * cmath.exp(-s * log_t)]
    poch = s  # rising factorial s (s+1) ... (s+2j-2)
    term = 0.0 + 0.0j
    for j in range(1, cfg.bernoulli_terms + 1):
        b = bernoulli_number(2 * j) / math.factorial(2 * j)
        term = b * poch * cmath.exp(-(s + 2 * j - 1) * log_t)
        tail.append(term)
        poch = poch * (s + 2 * j - 1) * (s + 2 * j)
    return head + compensated_sum(tail), term


def hurwitz_zeta_s_derivative_at_0(
    z: complex, cfg: PrecisionConfig | None = None
) -> complex:
    """d/ds zeta(s, z) at s = 0, differentiating the expansion termwise.

    Equals log(Gamma(z)/sqrt(2*pi)) on the branch assembled from the
    principal logarithms of z, z+1, ..., z+N.
    """
    z = complex(z)
    cfg = cfg or PrecisionConfig()
    if _is_nonpositive_integer(z):
        raise PoleError(f"derivative undefined at z = {z}")
    decay = (2.0 * cfg.bernoulli_terms + 6.0) / TWO_PI + 2.0
    n_terms = max(cfg.series_cutoff, int(math.ceil(decay - z.real)))
    head = compensated_sum(-cmath.log(z + v) for v in range(n_terms))
    t = z + n_terms
    log_t = cmath.log(t)
    tail = [t * log_t - t, -0.5 * log_t]
    t_pow = 1.0 / t  # t^(1-2j) for j = 1
    for j in range(1, cfg.bernoulli_terms + 1):
        tail.append(bernoulli_number(2 * j) / ((2 * j) * (2 * j - 1)) * t_pow)
        t_pow = t_pow / (t * t)
    return head + compensated_sum(tail)


def riemann_zeta(s: complex, cfg: PrecisionConfig | None = None) -> complex:
    """zeta(s) as the z = 1 case of hurwitz_zeta."""
    return hurwitz_zeta(s, 1.0, cfg)


# ---------------------------------------------------------------------------
# adaptive Gauss-Legendre quadrature

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)


def _gl_panel(f: Callable[[np.ndarray], np.ndarray], a: float, b: float) -> complex:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    values = np.asarray(f(mid + half * _GL_NODES))
    return half * complex(np.dot(_GL_WEIGHTS, values))


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    cfg: PrecisionConfig | None = None,
) -> complex:
    """Integral of a vectorized (complex ok) integrand over [a, b].

    Panels are split recursively (left before right, so the evaluation
    order is deterministic) until the 15-point estimate of a panel agrees
    with the sum of its halves within the panel's share of the absolute
    error budget.
    """
    cfg = cfg or PrecisionConfig()
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integration endpoints must be finite")
    if a == b:
        return 0.0 + 0.0j
    sign = 1.0
    if a > b:
        a, b = b, a
        sign = -1.0
    total = _adaptive_panel(f, a, b, _gl_panel(f, a, b), cfg.target_abs_error, cfg.quadrature_max_depth)
    return sign * total


def _adaptive_panel(f, a, b, whole, tol, depth) -> complex:
    mid = 0.5 * (a + b)
    left = _gl_panel(f, a, mid)
    right = _gl_panel(f, mid, b)
    if abs(left + right - whole) <= max(tol, 1e-16 * (abs(left) + abs(right))):
        return left + right
    if depth <= 0:
        raise ConvergenceError(
            f"quadrature did not settle on [{a}, {b}]",
            best_estimate=left + right,
        )
    return _adaptive_panel(f, a, mid, left, 0.5 * tol, depth - 1) + _adaptive_panel(
        f, mid, b, right, 0.5 * tol, depth - 1
    )


# ---------------------------------------------------------------------------
# integer utilities


def _factorize(n: int) -> list[tuple[int, int]]:
    factors: list[tuple[int, int]] = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            mult = 0
            while n % d == 0:
                n //= d
                mult += 1
            factors.append((d, mult))
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return factors


def mobius(n: int) -> int:
    """Moebius function: (-1)^k on squarefree n with k prime factors, else 0."""
    if n < 1:
        raise DomainError("mobius requires n >= 1")
    if n == 1:
        return 1
    result = 1
    for _, mult in _factorize(n):
        if mult > 1:
            return 0
        result = -result
    return result


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    if n < 1:
        raise DomainError("divisors requires n >= 1")
    divs = [1]
    for p, mult in _factorize(n):
        divs = [d * p**e for d in divs for e in range(mult + 1)]
    return sorted(divs)


def primes_up_to(x: float) -> list[int]:
    """All primes p <= x by sieve."""
    limit = int(math.floor(x))
    if limit < 2:
        return []
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(math.isqrt(limit)) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


def kronecker_symbol(d: int, p: int) -> int:
    """(d|p) for prime p: 0 on ramified, +1 split, -1 inert."""
    if p < 2:
        raise DomainError("kronecker_symbol requires a prime p")
    if p == 2:
        if d % 2 == 0:
            return 0
        return 1 if d % 8 in (1, 7) else -1
    r = d % p
    if r == 0:
        return 0
    e = pow(r, (p - 1) // 2, p)
    return 1 if e == 1 else -1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return _factorize(n) == [(n, 1)]
