"""Leafwise Fourier analysis on the irrational-slope foliation of T^2.

Functions on the 2-torus are truncated Fourier series c_{mn} over the
mode grid |m|, |n| <= M.  Differentiating along the leaves of slope
alpha (parametrized as t -> (x + t*alpha, t)) multiplies each mode by
2*pi*i*(m*alpha + n), so the cohomological equation dh/dt = g - mean(g)
is solved by dividing modes, and the only obstruction is the mean c_00.
The reduced first cohomology is therefore one-dimensional and the class
of g is read off by harmonic_projection as Re c_00.

Division brings in small divisors |m*alpha + n|.  For badly
approximable slopes (golden ratio, sqrt(2)) the minima obey
min >= c/M; for Liouville-like slopes they collapse super-polynomially
and solve_cohomological flags the offending modes.  diophantine_report
tabulates the minima and the solution-norm amplification across mode
cutoffs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParseError, SmallDivisorError

TWO_PI_I = 2j * math.pi

DEFAULT_MIN_DIVISOR = 1e-12


@dataclass(frozen=True)
class SlopeParam:
    """Irrational slope of the foliation lines."""

    alpha: float
    label: str = "custom"

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise DomainError(f"slope must be finite, got {self.alpha}")

    @classmethod
    def golden(cls) -> "SlopeParam":
        return cls((1.0 + math.sqrt(5.0)) / 2.0, "golden")

    @classmethod
    def sqrt2(cls) -> "SlopeParam":
        return cls(math.sqrt(2.0), "sqrt2")

    @classmethod
    def liouville_like(cls) -> "SlopeParam":
        # sum of 10^(-k!) for k = 1, 2, 3; deeper terms are below double precision
        return cls(0.110001, "liouville")

    @classmethod
    def parse(cls, text: str) -> "SlopeParam":
        text = text.strip().lower()
        if text == "golden":
            return cls.golden()
        if text == "sqrt2":
            return cls.sqrt2()
        if text in ("liouville", "liouville_like"):
            return cls.liouville_like()
        try:
            return cls(float(text))
        except ValueError as exc:
            raise DomainError(f"cannot parse slope {text!r}") from exc


class FourierFunction2D:
    """Truncated Fourier series on T^2: coefficients c_{mn}, |m|,|n| <= M.

    Stored as a complex (2M+1) x (2M+1) array with c_{mn} at [m+M, n+M].
    """

    def __init__(self, coefficients: np.ndarray):
        coefficients = np.asarray(coefficients, dtype=complex)
        if coefficients.ndim != 2 or coefficients.shape[0] != coefficients.shape[1]:
            raise DomainError(f"coefficient grid must be square, got {coefficients.shape}")
        if coefficients.shape[0] % 2 != 1:
            raise DomainError(f"grid side must be odd (2M+1), got {coefficients.shape[0]}")
        self.coefficients = coefficients

    @property
    def mode_cutoff(self) -> int:
        return (self.coefficients.shape[0] - 1) // 2

    @classmethod
    def zeros(cls, m_cutoff: int) -> "FourierFunction2D":
        return cls(np.zeros((2 * m_cutoff + 1, 2 * m_cutoff + 1), dtype=complex))

    @classmethod
    def constant(cls, value: complex, m_cutoff: int) -> "FourierFunction2D":
        f = cls.zeros(m_cutoff)
        f.coefficients[m_cutoff, m_cutoff] = value
        return f

    @classmethod
    def single_mode(cls, m: int, n: int, value: complex, m_cutoff: int) -> "FourierFunction2D":
        f = cls.zeros(m_cutoff)
        f[m, n] = value
        return f

    @classmethod
    def hermitian_mode_pair(cls, m: int, n: int, value: complex, m_cutoff: int) -> "FourierFunction2D":
        """value at (m, n) plus the conjugate at (-m, -n): a real function."""
        f = cls.zeros(m_cutoff)
        f[m, n] = value
        f[-m, -n] = np.conj(value) if (m, n) != (0, 0) else value
        return f

    def _index(self, m: int, n: int) -> tuple[int, int]:
        cutoff = self.mode_cutoff
        if abs(m) > cutoff or abs(n) > cutoff:
            raise DomainError(f"mode ({m}, {n}) outside cutoff {cutoff}")
        return m + cutoff, n + cutoff

    def __getitem__(self, mn: tuple[int, int]) -> complex:
        i, j = self._index(*mn)
        return complex(self.coefficients[i, j])

    def __setitem__(self, mn: tuple[int, int], value: complex) -> None:
        i, j = self._index(*mn)
        self.coefficients[i, j] = value

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        """c_{-m,-n} = conj(c_{mn}), meaning the function is real-valued."""
        flipped = np.conj(self.coefficients[::-1, ::-1])
        scale = max(1.0, float(np.max(np.abs(self.coefficients))))
        return bool(np.max(np.abs(self.coefficients - flipped)) <= tol * scale)

    def l2_norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))

    def copy(self) -> "FourierFunction2D":
        return FourierFunction2D(self.coefficients.copy())


def _divisor_grid(alpha: SlopeParam, m_cutoff: int) -> np.ndarray:
    """m*alpha + n over the full grid, [m+M, n+M] indexing."""
    modes = np.arange(-m_cutoff, m_cutoff + 1, dtype=float)
    return modes[:, None] * alpha.alpha + modes[None, :]


def leafwise_derivative(f: FourierFunction2D, alpha: SlopeParam) -> FourierFunction2D:
    """Differentiate along the leaf t -> (x + t*alpha, t): c_{mn} *= 2 pi i (m alpha + n)."""
    divisors = _divisor_grid(alpha, f.mode_cutoff)
    return FourierFunction2D(f.coefficients * (TWO_PI_I * divisors))


@dataclass(frozen=True)
class SolveResult:
    solution: FourierFunction2D
    obstruction: complex
    smallest_divisor: float
    smallest_divisor_mode: tuple[int, int]
    flagged_modes: tuple[tuple[int, int], ...]


def solve_cohomological(
    g: FourierFunction2D,
    alpha: SlopeParam,
    min_divisor: float = DEFAULT_MIN_DIVISOR,
    strict: bool = False,
) -> SolveResult:
    """Solve dh/dt = g - c_00 by mode division.

    Modes with |m alpha + n| below min_divisor are listed in
    flagged_modes (only where g is nonzero there); with strict=True they
    raise SmallDivisorError instead.  The truncated solve is always
    well-defined as long as no divisor is exactly zero.
    """
    cutoff = g.mode_cutoff
    divisors = _divisor_grid(alpha, cutoff)
    active = np.abs(g.coefficients) > 0.0
    active[cutoff, cutoff] = False
    if np.any((divisors == 0.0) & active):
        raise DomainError(f"slope {alpha.alpha!r} is rational within the mode range")

    h = np.zeros_like(g.coefficients)
    np.divide(g.coefficients, TWO_PI_I * divisors, out=h, where=active)

    abs_div = np.abs(divisors)
    abs_div[cutoff, cutoff] = np.inf
    masked = np.where(active, abs_div, np.inf)
    if np.any(active):
        flat = int(np.argmin(masked))
        i, j = divmod(flat, masked.shape[1])
        smallest = float(masked[i, j])
        smallest_mode = (i - cutoff, j - cutoff)
    else:
        smallest = math.inf
        smallest_mode = (0, 0)

    flagged = [
        (int(i) - cutoff, int(j) - cutoff)
        for i, j in np.argwhere(active & (abs_div < min_divisor))
    ]
    flagged.sort()
    if strict and flagged:
        raise SmallDivisorError(
            f"{len(flagged)} modes with |m alpha + n| < {min_divisor:g}", modes=tuple(flagged)
        )
    return SolveResult(
        solution=FourierFunction2D(h),
        obstruction=g[0, 0],
        smallest_divisor=smallest,
        smallest_divisor_mode=smallest_mode,
        flagged_modes=tuple(flagged),
    )


def harmonic_projection(g: FourierFunction2D) -> float:
    """The reduced cohomology class of g: Re c_00.

    Requires a Hermitian grid (real-valued function); exact forms have
    c_00 = 0 and project to zero.
    """
    if not g.is_hermitian():
        raise DomainError("coefficient grid is not Hermitian (function not real-valued)")
    return g[0, 0].real


@dataclass(frozen=True)
class DiophantineRow:
    cutoff: int
    min_divisor: float
    min_divisor_mode: tuple[int, int]
    amplification: float


@dataclass(frozen=True)
class DiophantineReport:
    alpha: SlopeParam
    rows: tuple[DiophantineRow, ...]

    def fitted_lower_constant(self) -> float:
        """c with min |m alpha + n| >= c / M across the table."""
        return min(row.min_divisor * row.cutoff for row in self.rows)


def diophantine_report(alpha: SlopeParam, m_cutoff: int) -> DiophantineReport:
    """Small-divisor minima and solution-norm growth across mode cutoffs.

    Cutoffs double from 2 up to m_cutoff.  Amplification is the l2 ratio
    ||h||/||g|| for the reference g with every coefficient 1.
    """
    if m_cutoff < 1:
        raise DomainError(f"mode cutoff must be >= 1, got {m_cutoff}")
    cutoffs = []
    m = 2
    while m < m_cutoff:
        cutoffs.append(m)
        m *= 2
    if not cutoffs or cutoffs[-1] != m_cutoff:
        cutoffs.append(m_cutoff)

    rows = []
    for cut in cutoffs:
        ones = FourierFunction2D(np.ones((2 * cut + 1, 2 * cut + 1), dtype=complex))
        result = solve_cohomological(ones, alpha, min_divisor=0.0)
        rows.append(
            DiophantineRow(
                cutoff=cut,
                min_divisor=result.smallest_divisor,
                min_divisor_mode=result.smallest_divisor_mode,
                amplification=result.solution.l2_norm() / ones.l2_norm(),
            )
        )
    return DiophantineReport(alpha=alpha, rows=tuple(rows))


# ---------------------------------------------------------------------------
# coefficient files


def load_coefficients(path) -> FourierFunction2D:
    """Read "m n re im" lines; '#' starts a comment; M = largest mode seen."""
    entries = []
    with open(path) as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ParseError(f"expected 'm n re im', got {line!r}", line_number=lineno)
            try:
                m, n = int(parts[0]), int(parts[1])
                re, im = float(parts[2]), float(parts[3])
            except ValueError as exc:
                raise ParseError(f"bad entry in {line!r}", line_number=lineno) from exc
            entries.append((m, n, complex(re, im)))
    if not entries:
        raise ParseError("no coefficients in file", line_number=0)
    cutoff = max(max(abs(m), abs(n)) for m, n, _ in entries)
    f = FourierFunction2D.zeros(cutoff)
    for m, n, value in entries:
        f[m, n] = value
    return f


def save_coefficients(path, f: FourierFunction2D) -> None:
    cutoff = f.mode_cutoff
    with open(path, "w") as handle:
        handle.write("# m n re im\n")
        for m in range(-cutoff, cutoff + 1):
            for n in range(-cutoff, cutoff + 1):
                c = f[m, n]
                if c != 0:
                    handle.write(f"{m} {n} {c.real!r} {c.imag!r}\n")
