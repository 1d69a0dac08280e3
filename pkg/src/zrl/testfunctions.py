"""Test functions paired against spectral and geometric distributions.

Two families are provided:

* BumpFunction: the classic compactly supported mollifier
  exp(-1/(1-u^2)) with u = (t-center)/width, identically 0 outside
  (center-width, center+width).
* GaussianWindow: exp(-(t-center)^2 / (2 sigma^2)).  A Gaussian is not
  compactly supported; it is admitted with a *numerical* support window
  (center +- half_width_sigmas * sigma) used for quadrature panels and
  cutoff checks, while evaluation keeps the exact Gaussian values.  Its
  two-sided Laplace transform has the closed form
  sqrt(2 pi) sigma exp(s c + s^2 sigma^2 / 2), which transform() uses;
  everything omitted by windowing is covered by reported tail bounds.

transform(phi, s) is the pairing Phi(s) = integral phi(t) exp(t s) dt.

LinearCombination supports forming a phi1 + b phi2 (the sides of the
identities are linear in phi, and tests exercise that).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .config import PrecisionConfig
from .errors import DomainError
from .numerics import SQRT_TWO_PI, integrate


@dataclass(frozen=True)
class BumpFunction:
    center: float
    width: float

    def __post_init__(self):
        if not (self.width > 0.0):
            raise DomainError("bump width must be positive")

    @property
    def support(self) -> tuple[float, float]:
        return (self.center - self.width, self.center + self.width)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        u = (t - self.center) / self.width
        out = np.zeros_like(u)
        inside = np.abs(u) < 1.0
        with np.errstate(divide="ignore", over="ignore"):
            out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class GaussianWindow:
    center: float
    sigma: float
    half_width_sigmas: float = 6.0

    def __post_init__(self):
        if not (self.sigma > 0.0):
            raise DomainError("gaussian sigma must be positive")
        if not (self.half_width_sigmas >= 2.0):
            raise DomainError("gaussian window needs at least 2 sigmas")

    @property
    def support(self) -> tuple[float, float]:
        w = self.half_width_sigmas * self.sigma
        return (self.center - w, self.center + w)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.exp(-((t - self.center) ** 2) / (2.0 * self.sigma**2))
        return out if out.ndim else float(out)

    def transform_closed_form(self, s: complex) -> complex:
        s = complex(s)
        return SQRT_TWO_PI * self.sigma * cmath.exp(s * self.center + s * s * self.sigma**2 / 2.0)

    def window_mass_bound(self) -> float:
        """Upper bound on the integral of the Gaussian outside its window."""
        m = self.half_width_sigmas
        # Mills ratio: integral beyond m sigmas <= sigma * exp(-m^2/2) / m
        return 2.0 * self.sigma * math.exp(-m * m / 2.0) / m


@dataclass(frozen=True)
class LinearCombination:
    """a1*phi1 + a2*phi2 + ... with the support hull of the parts."""

    terms: tuple[tuple[float, object], ...]

    def __post_init__(self):
        if not self.terms:
            raise DomainError("linear combination needs at least one term")

    @property
    def support(self) -> tuple[float, float]:
        lows, highs = zip(*(fn.support for _, fn in self.terms))
        return (min(lows), max(highs))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for coef, fn in self.terms:
            out = out + coef * fn(t)
        return out if out.ndim else float(out)


TestFunction = BumpFunction | GaussianWindow | LinearCombination


def sign_side(phi: TestFunction) -> str:
    """'positive', 'negative', or 'straddles' from the support window."""
    lo, hi = phi.support
    if lo > 0.0:
        return "positive"
    if hi < 0.0:
        return "negative"
    return "straddles"


def transform(phi: TestFunction, s: complex, cfg: PrecisionConfig | None = None) -> complex:
    """Phi(s) = integral of phi(t) exp(t s) dt.

    Gaussians use the exact closed form of the full line; everything else
    integrates over the support window by adaptive quadrature.
    """
    cfg = cfg or PrecisionConfig()
    s = complex(s)
    if isinstance(phi, GaussianWindow):
        return phi.transform_closed_form(s)
    if isinstance(phi, LinearCombination):
        return sum(coef * transform(fn, s, cfg) for coef, fn in phi.terms)
    return transform_via_quadrature(phi, s, cfg)


def transform_via_quadrature(phi, s: complex, cfg: PrecisionConfig | None = None) -> complex:
    """Windowed quadrature route for Phi(s); oracle for the closed form."""
    cfg = cfg or PrecisionConfig()
    s = complex(s)
    lo, hi = phi.support
    return integrate(lambda t: phi(t) * np.exp(t * s), lo, hi, cfg)


def parse_test_function(text: str) -> TestFunction:
    """'bump:c,w' or 'gauss:c,sigma[,m]' to a test function."""
    text = text.strip().lower()
    kind, _, args = text.partition(":")
    parts = [a for a in args.split(",") if a]
    try:
        values = [float(a) for a in parts]
    except ValueError as exc:
        raise DomainError(f"bad test function numbers in {text!r}") from exc
    if kind == "bump" and len(values) == 2:
        return BumpFunction(values[0], values[1])
    if kind == "gauss" and len(values) in (2, 3):
        if len(values) == 2:
            return GaussianWindow(values[0], values[1])
        return GaussianWindow(values[0], values[1], values[2])
    raise DomainError(f"cannot parse test function {text!r}")
