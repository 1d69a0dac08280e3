"""Precision knobs threaded through the numerical routines."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from .errors import DomainError

ENV_PRECISION = "ZRL_PRECISION"


@dataclass(frozen=True)
class PrecisionConfig:
    """Bundle of tolerances and cutoffs used by the analytic routines.

    target_abs_error     absolute error aimed at by series and quadrature
    series_cutoff        base number of direct terms before asymptotic tails
    bernoulli_terms      correction terms in Euler-Maclaurin tails
    quadrature_max_depth recursion limit for adaptive panels
    """

    target_abs_error: float = 1.0e-12
    series_cutoff: int = 50
    bernoulli_terms: int = 8
    quadrature_max_depth: int = 24

    def __post_init__(self):
        if not (self.target_abs_error > 0.0):
            raise DomainError("target_abs_error must be positive")
        if self.series_cutoff < 1 or self.bernoulli_terms < 1:
            raise DomainError("cutoffs must be positive")
        if self.quadrature_max_depth < 1:
            raise DomainError("quadrature_max_depth must be positive")

    @classmethod
    def for_tolerance(cls, target_abs_error: float) -> "PrecisionConfig":
        """Scale cutoffs monotonically: tighter tolerance, larger cutoffs."""
        if not (target_abs_error > 0.0):
            raise DomainError("target_abs_error must be positive")
        digits = max(1.0, -math.log10(min(target_abs_error, 0.1)))
        return cls(
            target_abs_error=target_abs_error,
            series_cutoff=max(50, int(math.ceil(6 * digits))),
            bernoulli_terms=max(8, int(math.ceil(digits / 2))),
            quadrature_max_depth=max(24, int(math.ceil(2 * digits))),
        )


def default_config() -> PrecisionConfig:
    """Default precision, honouring the ZRL_PRECISION environment variable."""
    raw = os.environ.get(ENV_PRECISION)
    if raw is None:
        return PrecisionConfig()
    try:
        eps = float(raw)
    except ValueError as exc:
        raise DomainError(f"{ENV_PRECISION} is not a number: {raw!r}") from exc
    return PrecisionConfig.for_tolerance(eps)
