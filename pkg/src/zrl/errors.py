"""Exception taxonomy shared across the package.

Everything raised on purpose derives from ZrlError so callers (and the CLI)
can distinguish domain failures (exit code 1) from genuine bugs.
"""

from __future__ import annotations


class ZrlError(Exception):
    """Base class for all deliberate failures in this package."""


class DomainError(ZrlError):
    """Input lies outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class ConvergenceError(ZrlError):
    """An iterative scheme failed to reach the requested tolerance.

    Carries the best estimate so far in ``best_estimate`` when available.
    """

    def __init__(self, message: str, best_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate


class PrecisionError(ZrlError):
    """A rounding guard was breached; the result would not be trustworthy."""


class TruncationError(ZrlError):
    """A requested cutoff is too small for the requested accuracy."""


class ParseError(ZrlError):
    """A data file violates its format.  Carries the 1-based line number."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class OrderError(ZrlError):
    """Entries of a zero file are not strictly ascending."""


class MissedZeroError(ZrlError):
    """Zero count disagrees with the counting function.

    ``interval`` is the (t_lo, t_hi) scan window under suspicion.
    """

    def __init__(self, message: str, interval=None):
        super().__init__(message)
        self.interval = interval


class UnsupportedPrincipalValueError(DomainError):
    """Test function support straddles 0 where only one-sided weights exist."""


class NotOrdinaryError(DomainError):
    """The Frobenius trace is divisible by the characteristic."""


class ConsistencyError(ZrlError):
    """Derived integer data failed an exactness check."""


class SmallDivisorError(ZrlError):
    """Advisory: some mode hit a divisor below the configured floor.

    Solvers flag this condition in their result instead of raising; the
    exception class exists for callers that request strict behaviour.
    Carries the offending (m, n) modes in ``modes``.
    """

    def __init__(self, message: str, modes=None):
        super().__init__(message)
        self.modes = tuple(modes) if modes else ()
