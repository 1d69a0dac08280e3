"""Dynamical trace formula on suspension flows.

A suspension flow with base period l has closed orbits of length n*l,
m_n of them for each degree n.  Pairing a test function phi against the
geometric side of the trace formula gives

    chi(M) * l * phi(0)
    + sum_gamma l(gamma) [ sum_{k>=1} eps_gamma phi(k l(gamma))
                           + sum_{k<=-1} eps_gamma e^{alpha k l(gamma)} phi(k l(gamma)) ]

while the spectral side sums the transform Phi over three eigenvalue
ladders with signs (+, -, +):

    H0: {2 pi i k / l},
    H1: {(log pi + 2 pi i k) / l} and the conjugate family,
    H2: {alpha + 2 pi i k / l}.

For the suspension attached to an ordinary elliptic curve over F_p
(l = log p, alpha = 1) the two sides agree: Poisson summation turns the
ladder sums into l * sum_m phi(m l) weighted by 1 - pi^m - pibar^m + p^m,
which is the point count N_m for m >= 1, zero at m = 0, and
N_|m| p^{-|m|} for m <= -1 -- exactly the Mobius resummation of the
orbit sums.

Orbit data comes from three sources: ordinary elliptic curves (exact
integer Lucas recurrences), degree-q circle coverings (N_n = q^n - 1),
or user files with lines "n m_n".
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .config import PrecisionConfig
from .errors import (
    ConsistencyError,
    DomainError,
    NotOrdinaryError,
    ParseError,
    PrecisionError,
    TruncationError,
)
from .numerics import compensated_sum, divisors, integrate, is_prime, mobius
from .testfunctions import TestFunction, sign_side, transform

N_MAX_SUPPORTED = 60


@dataclass(frozen=True)
class EllipticCurveData:
    """Frobenius data (p, a_p) of an ordinary elliptic curve over F_p."""

    p: int
    a_p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"p = {self.p} is not prime")
        if self.a_p % self.p == 0:
            raise NotOrdinaryError(f"p = {self.p} divides a_p = {self.a_p}")
        if self.a_p * self.a_p > 4 * self.p:
            raise DomainError(f"a_p = {self.a_p} violates |a_p| <= 2 sqrt({self.p})")


def frobenius_eigenvalues(curve: EllipticCurveData) -> tuple[complex, complex]:
    """Roots pi, pibar of X^2 - a_p X + p (pi the root with Im >= 0)."""
    half = curve.a_p / 2.0
    disc = 4 * curve.p - curve.a_p * curve.a_p
    imag = math.sqrt(disc) / 2.0
    return complex(half, imag), complex(half, -imag)


@dataclass(frozen=True)
class WeilNumberReport:
    abs_pi: float
    sqrt_p: float
    deviation: float
    rotation_deviation: float
    passed: bool


def weil_number_check(curve: EllipticCurveData, tol: float = 1e-12) -> WeilNumberReport:
    """Check |pi| = sqrt(p), i.e. the rotation part of e^{l/2} O has |O| = 1."""
    pi, _ = frobenius_eigenvalues(curve)
    abs_pi = abs(pi)
    sqrt_p = math.sqrt(curve.p)
    deviation = abs(abs_pi - sqrt_p)
    rotation = abs(abs_pi / sqrt_p - 1.0)
    return WeilNumberReport(abs_pi, sqrt_p, deviation, rotation, deviation <= tol)


def _check_n(n: int) -> None:
    if not 1 <= n <= N_MAX_SUPPORTED:
        raise DomainError(f"degree n = {n} outside [1, {N_MAX_SUPPORTED}]")


def _lucas_traces(curve: EllipticCurveData, n_max: int) -> list[int]:
    """t_n = pi^n + pibar^n as exact integers, t_0 = 2."""
    traces = [2, curve.a_p]
    for _ in range(2, n_max + 1):
        traces.append(curve.a_p * traces[-1] - curve.p * traces[-2])
    return traces[: n_max + 1]


def point_counts(curve: EllipticCurveData, n: int) -> int:
    """N_n = p^n + 1 - pi^n - pibar^n, exactly."""
    _check_n(n)
    t_n = _lucas_traces(curve, n)[n]
    count = curve.p**n + 1 - t_n
    if count < 0:
        raise ConsistencyError(f"negative point count N_{n} = {count}")
    return count


def trace_via_powers(curve: EllipticCurveData, n: int) -> float:
    """pi^n + pibar^n by floating-point powers; cross-check for the recurrence."""
    _check_n(n)
    pi, pibar = frobenius_eigenvalues(curve)
    value = pi**n + pibar**n
    if abs(value.imag) > 1e-6:
        raise PrecisionError(f"imaginary residue {value.imag:g} in trace of degree {n}")
    return value.real


@dataclass(frozen=True)
class OrbitClass:
    """m closed orbits of degree n (length n*l), common sign eps."""

    n: int
    count: int
    eps: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"orbit degree must be >= 1, got {self.n}")
        if self.count < 0:
            raise DomainError(f"orbit count must be >= 0, got {self.count}")
        if self.eps not in (1, -1):
            raise DomainError(f"orbit sign must be +-1, got {self.eps}")


@dataclass(frozen=True)
class OrbitData:
    classes: tuple[OrbitClass, ...]

    @property
    def n_max(self) -> int:
        return max((c.n for c in self.classes), default=0)

    def summed_counts(self, n: int) -> int:
        """sum_{d | n} d * m_d, the periodic-point count of degree n."""
        return sum(c.n * c.count for c in self.classes if n % c.n == 0)


def closed_orbit_counts(curve: EllipticCurveData, n_max: int) -> OrbitData:
    """m_n = (1/n) sum_{d|n} mu(n/d) N_d, validated to be integers."""
    _check_n(n_max)
    traces = _lucas_traces(curve, n_max)
    counts = [curve.p**n + 1 - traces[n] for n in range(n_max + 1)]
    classes = []
    for n in range(1, n_max + 1):
        total = sum(mobius(n // d) * counts[d] for d in divisors(n))
        if total % n != 0:
            raise ConsistencyError(f"orbit count of degree {n} is {total}/{n}, not an integer")
        classes.append(OrbitClass(n, total // n))
    return OrbitData(tuple(classes))


def covering_orbit_counts(q: int, n_max: int) -> OrbitData:
    """Orbit counts of the degree-q circle covering map: N_n = q^n - 1."""
    if q < 2:
        raise DomainError(f"covering degree must be >= 2, got {q}")
    _check_n(n_max)
    classes = []
    for n in range(1, n_max + 1):
        total = sum(mobius(n // d) * (q**d - 1) for d in divisors(n))
        if total % n != 0:
            raise ConsistencyError(f"orbit count of degree {n} is {total}/{n}, not an integer")
        classes.append(OrbitClass(n, total // n))
    return OrbitData(tuple(classes))


def load_orbits(path) -> OrbitData:
    """Read orbit classes from lines "n m_n"; '#' starts a comment."""
    classes = []
    seen: set[int] = set()
    with open(path) as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"expected 'n m_n', got {line!r}", line_number=lineno)
            try:
                n, count = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ParseError(f"non-integer entry in {line!r}", line_number=lineno) from exc
            if n in seen:
                raise ParseError(f"duplicate orbit degree {n}", line_number=lineno)
            seen.add(n)
            classes.append(OrbitClass(n, count))
    return OrbitData(tuple(classes))


def save_orbits(path, orbits: OrbitData) -> None:
    with open(path, "w") as handle:
        handle.write("# n m_n\n")
        for c in orbits.classes:
            handle.write(f"{c.n} {c.count}\n")


@dataclass(frozen=True)
class SuspensionSpec:
    """Base period, conformal weight and orbit source of a suspension flow."""

    l: float
    alpha: float
    euler_char_base: int
    curve: EllipticCurveData | None = None
    covering_degree: int | None = None
    user_orbits: OrbitData | None = None

    def __post_init__(self):
        if not self.l > 0:
            raise DomainError(f"base period must be positive, got {self.l}")
        sources = [self.curve, self.covering_degree, self.user_orbits]
        if sum(s is not None for s in sources) != 1:
            raise DomainError("exactly one orbit source required")
        if self.curve is not None:
            if abs(self.l - math.log(self.curve.p)) > 1e-12:
                raise DomainError("elliptic suspension requires l = log p")
            if self.euler_char_base != 0:
                raise DomainError("elliptic suspension has torus base, chi(M) = 0")

    @classmethod
    def elliptic(cls, curve: EllipticCurveData) -> "SuspensionSpec":
        return cls(l=math.log(curve.p), alpha=1.0, euler_char_base=0, curve=curve)

    @classmethod
    def covering(cls, q: int, l: float = 1.0, alpha: float = 1.0) -> "SuspensionSpec":
        if q < 2:
            raise DomainError(f"covering degree must be >= 2, got {q}")
        return cls(l=l, alpha=alpha, euler_char_base=0, covering_degree=q)

    @classmethod
    def from_orbits(
        cls, orbits: OrbitData, l: float, alpha: float = 1.0, euler_char_base: int = 0
    ) -> "SuspensionSpec":
        return cls(l=l, alpha=alpha, euler_char_base=euler_char_base, user_orbits=orbits)

    def orbit_data(self, n_max: int) -> OrbitData:
        if self.curve is not None:
            return closed_orbit_counts(self.curve, n_max)
        if self.covering_degree is not None:
            return covering_orbit_counts(self.covering_degree, n_max)
        return self.user_orbits


# ---------------------------------------------------------------------------
# the two sides


def _orbit_sum(phi, length: float, alpha: float, k_max: int) -> float:
    ks = np.arange(1, k_max + 1, dtype=float)
    positive = np.asarray(phi(ks * length), dtype=float)
    negative = np.asarray(phi(-ks * length), dtype=float) * np.exp(-alpha * ks * length)
    return (compensated_sum(positive[::-1]) + compensated_sum(negative[::-1])).real


def geometric_distribution(
    phi: TestFunction,
    spec: SuspensionSpec,
    orbits: OrbitData,
    k_max: int,
    cfg: PrecisionConfig | None = None,
) -> float:
    """chi(M) l phi(0) plus the closed-orbit sums, truncated at k_max."""
    cfg = cfg or PrecisionConfig()
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    total = spec.euler_char_base * spec.l * float(phi(0.0))
    tail = 0.0
    terms = []
    for c in orbits.classes:
        length = c.n * spec.l
        terms.append(c.eps * c.count * length * _orbit_sum(phi, length, spec.alpha, k_max))
        for k in (k_max + 1, k_max + 2):
            tail += c.count * length * (
                abs(float(phi(k * length)))
                + abs(float(phi(-k * length))) * math.exp(-spec.alpha * k * length)
            )
    if tail * k_max > cfg.target_abs_error:
        raise TruncationError(f"orbit harmonics beyond k_max = {k_max} contribute ~{tail:g}")
    return total + compensated_sum(terms).real


def nweighted_geometric(
    phi: TestFunction,
    curve: EllipticCurveData,
    n_max: int,
    cfg: PrecisionConfig | None = None,
) -> float:
    """log p * sum_n N_n [phi(n log p) + p^{-n} phi(-n log p)].

    Mobius resummation of the orbit sums; without the chi(M) delta_0 term,
    which vanishes for elliptic suspensions anyway.
    """
    cfg = cfg or PrecisionConfig()
    _check_n(n_max)
    log_p = math.log(curve.p)
    traces = _lucas_traces(curve, n_max)
    terms = []
    for n in range(1, n_max + 1):
        count = curve.p**n + 1 - traces[n]
        terms.append(count * float(phi(n * log_p)))
        terms.append(count * float(curve.p) ** (-n) * float(phi(-n * log_p)))
    tail = 0.0
    for n in (n_max + 1, n_max + 2):
        bound = curve.p**n + 1 + 2 * math.sqrt(float(curve.p)) ** n
        tail += bound * abs(float(phi(n * log_p))) + 2.0 * abs(float(phi(-n * log_p)))
    if tail * log_p > cfg.target_abs_error:
        raise TruncationError(f"orbit degrees beyond n_max = {n_max} contribute ~{tail:g}")
    return log_p * compensated_sum(terms).real


_LADDER_SIGNS = (1.0, -1.0, -1.0, 1.0)


def _ladder_points(spec: SuspensionSpec, curve: EllipticCurveData, k_max: int):
    """The four eigenvalue families (H0, two H1 rays, H2) at |k| <= k_max."""
    pi, pibar = frobenius_eigenvalues(curve)
    ks = range(-k_max, k_max + 1)
    two_pi_i = 2j * math.pi
    h0 = [two_pi_i * k / spec.l for k in ks]
    h1a = [(cmath.log(pi) + two_pi_i * k) / spec.l for k in ks]
    h1b = [(cmath.log(pibar) + two_pi_i * k) / spec.l for k in ks]
    h2 = [spec.alpha + two_pi_i * k / spec.l for k in ks]
    return h0, h1a, h1b, h2


def spectral_distribution(
    phi: TestFunction,
    spec: SuspensionSpec,
    curve: EllipticCurveData,
    k_max: int,
    cfg: PrecisionConfig | None = None,
) -> float:
    """Alternating ladder sum sum_k Phi over H0 - H1 + H2, |k| <= k_max."""
    cfg = cfg or PrecisionConfig()
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    families = _ladder_points(spec, curve, k_max)
    terms = []
    tail = 0.0
    for sign, family in zip(_LADDER_SIGNS, families):
        for s in family:
            terms.append(sign * transform(phi, s, cfg))
        step = 2j * math.pi / spec.l
        for extra in (1, 2):
            tail += abs(transform(phi, family[-1] + extra * step, cfg))
            tail += abs(transform(phi, family[0] - extra * step, cfg))
    if tail * k_max > cfg.target_abs_error:
        raise TruncationError(f"ladder tails beyond k_max = {k_max} contribute ~{tail:g}")
    total = compensated_sum(t.real for t in terms).real
    imag = compensated_sum(t.imag for t in terms).real
    if abs(imag) > 1e-8 * max(1.0, abs(total)):
        raise PrecisionError(f"spectral sum has imaginary residue {imag:g}")
    return total


@dataclass(frozen=True)
class TraceFormulaReport:
    curve: EllipticCurveData
    spectral: float
    geometric: float
    nweighted: float
    residual: float
    resummation_gap: float
    k_max: int
    n_max: int


def check_trace_formula(
    phi: TestFunction,
    spec: SuspensionSpec,
    k_max: int,
    n_max: int,
    cfg: PrecisionConfig | None = None,
) -> TraceFormulaReport:
    """Evaluate both sides for an elliptic suspension and report the residual."""
    cfg = cfg or PrecisionConfig()
    if spec.curve is None:
        raise DomainError("trace-formula check needs an elliptic orbit source")
    orbits = spec.orbit_data(n_max)
    geometric = geometric_distribution(phi, spec, orbits, k_max, cfg)
    spectral = spectral_distribution(phi, spec, spec.curve, k_max, cfg)
    nweighted = nweighted_geometric(phi, spec.curve, n_max, cfg)
    delta0 = spec.euler_char_base * spec.l * float(phi(0.0))
    return TraceFormulaReport(
        curve=spec.curve,
        spectral=spectral,
        geometric=geometric,
        nweighted=nweighted,
        residual=abs(spectral - geometric),
        resummation_gap=abs(geometric - delta0 - nweighted),
        k_max=k_max,
        n_max=n_max,
    )


# ---------------------------------------------------------------------------
# fixed-point weights


def weil_like_wx(t: float, eps_x: float, kappa_x: float, side: str) -> float:
    """Fixed-point weight eps_x |1 - e^{kappa t}|^{-1}, e^t-weighted on the left.

    Suspensions have no flow fixed points, so nothing here feeds the trace
    formula; the function exists to compare against the archimedean
    explicit-formula weights (eps = 1, kappa in {-1, -2}).
    """
    if side == "positive":
        if t <= 0:
            raise DomainError(f"positive-side weight needs t > 0, got {t}")
        return eps_x / abs(1.0 - math.exp(kappa_x * t))
    if side == "negative":
        if t >= 0:
            raise DomainError(f"negative-side weight needs t < 0, got {t}")
        return eps_x * math.exp(t) / abs(1.0 - math.exp(kappa_x * abs(t)))
    raise DomainError(f"side must be 'positive' or 'negative', got {side!r}")


def pair_weil_like(
    phi: TestFunction,
    eps_x: float,
    kappa_x: float,
    cfg: PrecisionConfig | None = None,
) -> float:
    """Integrate phi against the fixed-point weight over its support."""
    cfg = cfg or PrecisionConfig()
    side = sign_side(phi)
    if side == "straddles":
        raise DomainError("test function support straddles 0")
    lo, hi = phi.support

    def integrand(ts):
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        weights = np.array([weil_like_wx(t, eps_x, kappa_x, side) for t in ts])
        return phi(ts) * weights

    return float(np.real(integrate(integrand, lo, hi, cfg)))
