"""Figure rendering for the CLI report path.

Each function draws one diagnostic figure to a file.  Figures are
optional side outputs; nothing in the numerical pipeline depends on
them.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .config import PrecisionConfig
from .zeta_zeros import ZeroList, hardy_z

DPI = 140


def zeros_scan_figure(path, zeros: ZeroList, cfg: PrecisionConfig | None = None) -> None:
    """Hardy Z along the scanned range with the located zeros marked."""
    cfg = cfg or PrecisionConfig()
    lo = 10.0
    hi = max(zeros.t_max, lo + 5.0)
    ts = np.linspace(lo, hi, min(4000, max(800, int((hi - lo) * 40))))
    zs = hardy_z(ts, cfg)
    fig, ax = plt.subplots(figsize=(9, 3.2))
    ax.plot(ts, zs, lw=0.8)
    ax.axhline(0.0, color="k", lw=0.5)
    ords = np.asarray(zeros.ordinates)
    ax.plot(ords, np.zeros_like(ords), "o", ms=3, color="crimson")
    ax.set_xlabel("t")
    ax.set_ylabel("Z(t)")
    ax.set_title(f"{len(zeros.ordinates)} zeros up to t = {zeros.t_max:g}")
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def explicit_formula_figure(path, report) -> None:
    """Contribution breakdown of both sides and the residual."""
    spec = report.spectral
    geom = report.geometric
    labels = [
        "transform_at_0",
        "transform_at_1",
        "minus_zero_sum",
        "discriminant",
        "prime_sum",
        "arch_real",
        "arch_complex",
    ]
    values = [
        spec.pole_term_0.real,
        spec.pole_term_1.real,
        -spec.zero_sum.real,
        geom.discriminant_term,
        geom.prime_sum,
        geom.archimedean_real,
        geom.archimedean_complex,
    ]
    colors = ["#4878d0"] * 3 + ["#ee854a"] * 4
    fig, ax = plt.subplots(figsize=(7, 3.6))
    ax.barh(range(len(values)), values, color=colors)
    ax.set_yticks(range(len(labels)), labels)
    ax.invert_yaxis()
    ax.axvline(0.0, color="k", lw=0.5)
    ax.set_title(
        f"{report.field.label}: spectral blue vs geometric orange, residual {report.residual:.3g}"
    )
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def suspension_ladders_figure(path, spec, curve, k_span: int = 15) -> None:
    """Eigenvalue ladders in the complex plane, one color per cohomology degree."""
    from .suspension import _ladder_points

    h0, h1a, h1b, h2 = _ladder_points(spec, curve, k_span)
    fig, ax = plt.subplots(figsize=(5.2, 5.2))
    for points, label, color, marker in [
        (h0, "H0", "#4878d0", "o"),
        (h1a + h1b, "H1", "#d65f5f", "x"),
        (h2, "H2", "#6acc64", "s"),
    ]:
        xs = [z.real for z in points]
        ys = [z.imag for z in points]
        ax.scatter(xs, ys, s=14, label=label, color=color, marker=marker)
    ax.axvline(0.5 * spec.alpha, color="k", lw=0.5, ls=":")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(f"ladders for p = {curve.p}, a_p = {curve.a_p} (|k| <= {k_span})")
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def kronecker_minima_figure(path, report) -> None:
    """Small-divisor minima against the c/M reference, plus amplification."""
    cutoffs = [row.cutoff for row in report.rows]
    minima = [row.min_divisor for row in report.rows]
    amps = [row.amplification for row in report.rows]
    c = report.fitted_lower_constant()
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8.6, 3.4))
    ax1.loglog(cutoffs, minima, "o-", label="min |m a + n|")
    if c > 0:
        ax1.loglog(cutoffs, [c / m for m in cutoffs], "--", label=f"{c:.3g}/M")
    ax1.set_xlabel("mode cutoff M")
    ax1.set_ylabel("smallest divisor")
    ax1.legend()
    ax2.loglog(cutoffs, amps, "s-", color="#d65f5f")
    ax2.set_xlabel("mode cutoff M")
    ax2.set_ylabel("||h|| / ||g||")
    fig.suptitle(f"slope {report.alpha.label} = {report.alpha.alpha:.12g}")
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def euler_factor_residual_figure(path, place, residual_fn, s_real_range=(0.5, 4.0)) -> None:
    """Identity residual |det * local_factor - 1| along a real-s segment."""
    ss = np.linspace(s_real_range[0], s_real_range[1], 60)
    residuals = []
    for s in ss:
        try:
            residuals.append(max(residual_fn(complex(s, 0.0)), 1e-18))
        except Exception:
            residuals.append(math.nan)
    fig, ax = plt.subplots(figsize=(6.4, 3.2))
    ax.semilogy(ss, residuals, ".-", ms=4)
    ax.set_xlabel("Re s")
    ax.set_ylabel("|det * zeta_p - 1|")
    ax.set_title(f"local-factor identity residual at the {place.kind} place")
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
