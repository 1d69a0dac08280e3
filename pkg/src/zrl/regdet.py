"""Zeta-regularized determinants of spectral ladders.

A ladder is a multiset of eigenvalues of one of three shapes:

* FiniteSet: finitely many explicit eigenvalues,
* HalfLine:  {gamma*(z+v) : v = 0, 1, 2, ...},
* Bilateral: {gamma*(z+v) : v in Z}.

The spectral zeta function sums alpha^(-s) over the nonzero eigenvalues
with the argument convention -pi < arg(alpha) <= pi, and the regularized
determinant is exp(-d/ds zeta at 0).  For the ladder shapes above the
determinant collapses to closed forms:

    FiniteSet             product of the eigenvalues
    HalfLine              gamma^(1/2-z) * sqrt(2*pi) / Gamma(z)
    Bilateral, Im g > 0   1 - exp(-2*pi*i*z)
    Bilateral, Im g < 0   1 - exp(+2*pi*i*z)

A zero eigenvalue anywhere forces determinant 0.  The numerical route
exp(-d/ds zeta(0)) is kept alongside (regdet_via_spectral_zeta) as an
independent cross-check of the closed forms; it differentiates the
continued series termwise rather than using finite differences.

Local factors of completed zeta functions arise from the shifted ladder
(s - Theta)/(2*pi): euler_factor_via_regdet folds that shift into ladder
parameters (gamma, z) per place kind and routes through regdet, while
euler_factor_direct evaluates the defining formulas

    finite, norm N:   (1 - N^(-s))         [inverse local factor]
    real:             1 / (2^(-1/2) pi^(-s/2) Gamma(s/2))
    complex:          1 / ((2*pi)^(-s) Gamma(s))

as the oracle side of the identity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .config import PrecisionConfig
from .errors import DomainError, PoleError
from .numerics import (
    SQRT_TWO_PI,
    TWO_PI,
    compensated_sum,
    gamma_fn,
    hurwitz_zeta,
    hurwitz_zeta_s_derivative_at_0,
)


def _is_real_integer(w: complex) -> bool:
    return w.imag == 0.0 and w.real == math.floor(w.real)


@dataclass(frozen=True)
class FiniteSet:
    eigenvalues: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "eigenvalues", tuple(complex(a) for a in self.eigenvalues)
        )

    @property
    def contains_zero(self) -> bool:
        return any(a == 0.0 for a in self.eigenvalues)


@dataclass(frozen=True)
class HalfLine:
    """Eigenvalues gamma*(z+v) for v = 0, 1, 2, ..."""

    gamma: complex
    z: complex

    def __post_init__(self):
        g = complex(self.gamma)
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "z", complex(self.z))
        if g == 0.0:
            raise DomainError("ladder scale gamma must be nonzero")
        if g.imag == 0.0 and g.real < 0.0:
            raise DomainError("ladder scale gamma must not be a negative real")

    @property
    def contains_zero(self) -> bool:
        z = self.z
        return _is_real_integer(z) and z.real <= 0.0


@dataclass(frozen=True)
class Bilateral:
    """Eigenvalues gamma*(z+v) for v in Z.  Needs gamma off the real axis."""

    gamma: complex
    z: complex

    def __post_init__(self):
        g = complex(self.gamma)
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "z", complex(self.z))
        if g == 0.0:
            raise DomainError("ladder scale gamma must be nonzero")
        if g.imag == 0.0:
            raise DomainError(
                "bilateral ladders need Im(gamma) != 0; both directions of a "
                "real ladder would collide with the argument convention"
            )

    @property
    def contains_zero(self) -> bool:
        return _is_real_integer(self.z)


Ladder = FiniteSet | HalfLine | Bilateral


def _principal_power(alpha: complex, s: complex) -> complex:
    return cmath.exp(-s * cmath.log(alpha))


def _argument_wraps(gamma: complex, z: complex) -> list[tuple[int, int]]:
    """(v, k) pairs where arg(gamma) + arg(z+v) leaves (-pi, pi].

    For those v the principal power of the product gamma*(z+v) differs
    from the product of principal powers by exp(2*pi*i*k*s).  Only
    finitely many v can wrap because arg(z+v) -> 0.
    """
    arg_g = cmath.phase(gamma)
    margin = math.pi - abs(arg_g)
    wraps = []
    v = 0
    while True:
        w = z + v
        if w != 0.0:
            delta = arg_g + cmath.phase(w)
            k = math.ceil((delta - math.pi) / TWO_PI)
            if k != 0:
                wraps.append((v, k))
            if w.real > 0.0 and abs(cmath.phase(w)) <= margin:
                break
        v += 1
        if v > 10_000_000:
            raise DomainError("argument bookkeeping did not terminate")
    return wraps


def spectral_zeta(ladder: Ladder, s: complex, cfg: PrecisionConfig | None = None) -> complex:
    """Sum of alpha^(-s) over nonzero ladder eigenvalues, continued in s."""
    s = complex(s)
    cfg = cfg or PrecisionConfig()
    if isinstance(ladder, FiniteSet):
        return compensated_sum(
            _principal_power(a, s) for a in ladder.eigenvalues if a != 0.0
        )
    if isinstance(ladder, HalfLine):
        return _halfline_zeta(ladder.gamma, ladder.z, s, cfg)
    if isinstance(ladder, Bilateral):
        g, z = ladder.gamma, ladder.z
        if ladder.contains_zero:
            # {z+v : v in Z} = Z, so the nonzero spectrum is two clean rays
            return _halfline_zeta(g, 1.0, s, cfg) + _halfline_zeta(-g, 1.0, s, cfg)
        return (
            _halfline_zeta(g, z, s, cfg)
            + _halfline_zeta(-g, -z, s, cfg)
            - _principal_power(g * z, s)
        )
    raise DomainError(f"unknown ladder type {type(ladder).__name__}")


def _halfline_zeta(gamma: complex, z: complex, s: complex, cfg: PrecisionConfig) -> complex:
    if gamma.imag == 0.0 and gamma.real < 0.0:
        raise DomainError("gamma must not be a negative real")
    if _is_real_integer(z) and z.real <= 0.0:
        # skip eigenvalues up to and including the zero one
        v0 = int(-z.real)
        head = compensated_sum(
            _principal_power(gamma * (z + v), s) for v in range(v0)
        )
        return head + _halfline_zeta(gamma, z + v0 + 1, s, cfg)
    base = _principal_power(gamma, s) * hurwitz_zeta(s, z, cfg)
    correction = 0.0 + 0.0j
    for v, k in _argument_wraps(gamma, z):
        factored = _principal_power(gamma, s) * _principal_power(z + v, s)
        correction += factored * (cmath.exp(TWO_PI * 1j * k * s) - 1.0)
    return base + correction


def _halfline_zeta_derivative_at_0(gamma: complex, z: complex, cfg: PrecisionConfig) -> complex:
    """d/ds at 0 of the half-line spectral zeta (termwise, no differences)."""
    log_g = cmath.log(gamma)
    base = -log_g * (0.5 - z) + hurwitz_zeta_s_derivative_at_0(z, cfg)
    wrap_sum = sum(k for _, k in _argument_wraps(gamma, z))
    return base + TWO_PI * 1j * wrap_sum


def regdet(ladder: Ladder, cfg: PrecisionConfig | None = None) -> complex:
    """Regularized determinant via the closed forms; 0 if 0 is an eigenvalue."""
    cfg = cfg or PrecisionConfig()
    if ladder.contains_zero:
        return 0.0 + 0.0j
    if isinstance(ladder, FiniteSet):
        prod = 1.0 + 0.0j
        for a in ladder.eigenvalues:
            prod *= a
        return prod
    if isinstance(ladder, HalfLine):
        g, z = ladder.gamma, ladder.z
        return cmath.exp((0.5 - z) * cmath.log(g)) * SQRT_TWO_PI / gamma_fn(z)
    if isinstance(ladder, Bilateral):
        g, z = ladder.gamma, ladder.z
        if g.imag > 0.0:
            return 1.0 - cmath.exp(-TWO_PI * 1j * z)
        return 1.0 - cmath.exp(TWO_PI * 1j * z)
    raise DomainError(f"unknown ladder type {type(ladder).__name__}")


def regdet_via_spectral_zeta(ladder: Ladder, cfg: PrecisionConfig | None = None) -> complex:
    """exp(-d/ds zeta_Theta(0)): the numerical continuation route."""
    cfg = cfg or PrecisionConfig()
    if ladder.contains_zero:
        return 0.0 + 0.0j
    if isinstance(ladder, FiniteSet):
        log_sum = compensated_sum(cmath.log(a) for a in ladder.eigenvalues)
        return cmath.exp(log_sum)
    if isinstance(ladder, HalfLine):
        deriv = _halfline_zeta_derivative_at_0(ladder.gamma, ladder.z, cfg)
        return cmath.exp(-deriv)
    if isinstance(ladder, Bilateral):
        g, z = ladder.gamma, ladder.z
        deriv = (
            _halfline_zeta_derivative_at_0(g, z, cfg)
            + _halfline_zeta_derivative_at_0(-g, -z, cfg)
            + cmath.log(g * z)
        )
        return cmath.exp(-deriv)
    raise DomainError(f"unknown ladder type {type(ladder).__name__}")


# ---------------------------------------------------------------------------
# local factors


@dataclass(frozen=True)
class Place:
    """A place kind: finite with residue norm N >= 2, real, or complex."""

    kind: str
    norm: int | None = None

    def __post_init__(self):
        if self.kind not in ("finite", "real", "complex"):
            raise DomainError(f"unknown place kind {self.kind!r}")
        if self.kind == "finite":
            if self.norm is None or self.norm < 2:
                raise DomainError("finite places need an integer norm >= 2")
        elif self.norm is not None:
            raise DomainError("only finite places carry a norm")

    @classmethod
    def finite(cls, norm: int) -> "Place":
        return cls("finite", int(norm))

    @classmethod
    def real(cls) -> "Place":
        return cls("real")

    @classmethod
    def complex_infinite(cls) -> "Place":
        return cls("complex")

    @classmethod
    def parse(cls, text: str) -> "Place":
        text = text.strip().lower()
        if text == "real":
            return cls.real()
        if text == "complex":
            return cls.complex_infinite()
        if text.startswith("finite:"):
            try:
                return cls.finite(int(text.split(":", 1)[1]))
            except ValueError as exc:
                raise DomainError(f"bad finite place spec {text!r}") from exc
        raise DomainError(f"cannot parse place {text!r}")


def place_ladder(place: Place, s: complex) -> Ladder:
    """The ladder of (s - Theta)/(2*pi) eigenvalues for the place's operator."""
    s = complex(s)
    if place.kind == "finite":
        log_n = math.log(place.norm)
        # (s - 2*pi*i*v/log N)/(2*pi) = (i/log N) * (s*log N/(2*pi*i) + v)
        return Bilateral(gamma=1j / log_n, z=s * log_n / (TWO_PI * 1j))
    if place.kind == "real":
        # (s + 2v)/(2*pi) = (1/pi) * (s/2 + v)
        return HalfLine(gamma=1.0 / math.pi, z=s / 2.0)
    # (s + v)/(2*pi)
    return HalfLine(gamma=1.0 / TWO_PI, z=s)


def euler_factor_via_regdet(place: Place, s: complex, cfg: PrecisionConfig | None = None) -> complex:
    """Inverse local factor as a regularized determinant.

    Returns 0 exactly when s is a pole of the local factor (a zero
    eigenvalue appears in the shifted ladder).
    """
    return regdet(place_ladder(place, s), cfg)


def euler_factor_direct(place: Place, s: complex) -> complex:
    """Inverse local factor straight from the defining formulas."""
    s = complex(s)
    if place.kind == "finite":
        return 1.0 - cmath.exp(-s * math.log(place.norm))
    if place.kind == "real":
        half = s / 2.0
        if _is_real_integer(half) and half.real <= 0.0:
            return 0.0 + 0.0j
        local = 2.0 ** (-0.5) * cmath.exp(-half * math.log(math.pi)) * gamma_fn(half)
        return 1.0 / local
    if _is_real_integer(s) and s.real <= 0.0:
        return 0.0 + 0.0j
    local = cmath.exp(-s * math.log(TWO_PI)) * gamma_fn(s)
    return 1.0 / local
