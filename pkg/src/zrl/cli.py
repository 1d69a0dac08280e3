"""Command-line interface.

Subcommands mirror the library modules:

    regdet euler-factor | regdet ladder
    zeros find | zeros info
    ef check
    suspension check | suspension orbits
    kronecker solve | kronecker report
    lefschetz field | lefschetz dynamical

Every run emits a deterministic key-value report ("section.key = value"
lines, or aligned tables with --format text).  The report always lists
the truncation parameters that shaped the numbers.  With --figures DIR
the main subcommands also render diagnostic figures into DIR.

Exit codes: 0 success, 1 domain/numerical errors, 2 argument or input
parse errors.  The environment variable ZRL_PRECISION overrides the
default absolute error target of 1e-12.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from .config import PrecisionConfig, default_config
from .errors import ParseError, ZrlError
from .explicit_formula import NumberField, check_explicit_formula
from .kronecker import (
    FourierFunction2D,
    SlopeParam,
    diophantine_report,
    harmonic_projection,
    leafwise_derivative,
    load_coefficients,
    solve_cohomological,
)
from .lefschetz import (
    AutomorphismAction,
    FixedPointDatum,
    InfinitePlaceSet,
    arithmetic_lefschetz,
    compact_support_vanishing_check,
    dynamical_lefschetz,
    euler_characteristic_infinite,
    load_places_action,
)
from .regdet import (
    Place,
    euler_factor_direct,
    euler_factor_via_regdet,
    place_ladder,
    regdet,
    regdet_via_spectral_zeta,
)
from .report import ReportDocument
from .suspension import (
    EllipticCurveData,
    SuspensionSpec,
    check_trace_formula,
    closed_orbit_counts,
    covering_orbit_counts,
    frobenius_eigenvalues,
    load_orbits,
    point_counts,
    save_orbits,
    weil_number_check,
)
from .testfunctions import parse_test_function
from .zeta_zeros import ZeroList, find_zeros, load_zeros, save_zeros, zero_count_estimate


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ParseError(f"expected RE or RE,IM, got {text!r}")


def _parse_int_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) == 2:
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            pass
    raise ParseError(f"expected two comma-separated integers, got {text!r}")


def _figure_path(args, name: str) -> str | None:
    if not args.figures:
        return None
    os.makedirs(args.figures, exist_ok=True)
    return os.path.join(args.figures, name)


def _add_figure(doc: ReportDocument, key: str, path: str | None) -> None:
    if path:
        doc.add("figures", key, path)


# ---------------------------------------------------------------------------
# regdet


def _run_regdet_euler_factor(args, doc: ReportDocument, cfg: PrecisionConfig) -> None:
    place = Place.parse(args.place)
    s = _parse_complex(args.s)
    doc.add("inputs", "place", args.place)
    doc.add("inputs", "s", s)
    ladder = place_ladder(place, s)
    doc.add("ladder", "kind", type(ladder).__name__)
    doc.add("ladder", "gamma", ladder.gamma)
    doc.add("ladder", "z", ladder.z)
    via = euler_factor_via_regdet(place, s, cfg)
    direct = euler_factor_direct(place, s)
    doc.add("results", "value", via)
    doc.add("results", "direct", direct)
    if direct == 0 or via == 0:
        doc.add("results", "local_factor_pole", True)
        match = via == direct
    else:
        product = via / direct
        residual = abs(product - 1.0)
        doc.add("results", "product_with_local_factor", product)
        doc.add("results", "identity_residual", residual)
        match = residual < 1e-9
    doc.add("results", "zeta_p_inverse_match", "pass" if match else "fail")

    path = _figure_path(args, "euler_factor_residual.png")
    if path:
        from .figures import euler_factor_residual_figure

        def residual_fn(w: complex) -> float:
            d = euler_factor_direct(place, w)
            if d == 0:
                return math.nan
            return abs(euler_factor_via_regdet(place, w, cfg) / d - 1.0)

        euler_factor_residual_figure(path, place, residual_fn)
        _add_figure(doc, "euler_factor_residual", path)


def _run_regdet_ladder(args, doc: ReportDocument, cfg: PrecisionConfig) -> None:
    place = Place.parse(args.place)
    s = _parse_complex(args.s)
    ladder = place_ladder(place, s)
    doc.add("inputs", "place", args.place)
    doc.add("inputs", "s", s)
    doc.add("ladder", "kind", type(ladder).__name__)
    doc.add("ladder", "gamma", ladder.gamma)
    doc.add("ladder", "z", ladder.z)
    doc.add("ladder", "contains_zero", ladder.contains_zero)
    det_closed = regdet(ladder, cfg)
    doc.add("results", "det_closed_form", det_closed)
    if not ladder.contains_zero:
        det_numeric = regdet_via_spectral_zeta(ladder, cfg)
        doc.add("results", "det_numeric", det_numeric)
        doc.add("results", "route_difference", abs(det_closed - det_numeric))


# ---------------------------------------------------------------------------
# zeros


def _run_zeros_find(args, doc: ReportDocument, cfg: PrecisionConfig) -> None:
    zeros = find_zeros(args.t_max, cfg)
    doc.add("inputs", "t_max", args.t_max)
    doc.add("results", "count", len(zeros.ordinates))
    doc.add("results", "count_estimate", zero_count_estimate(zeros.t_max))
    doc.add("results", "first", zeros.ordinates[0])
    doc.add("results", "last", zeros.ordinates[-1])
    gaps = np.diff(zeros.ordinates)
    if len(gaps):
        doc.add("results", "min_gap", float(np.min(gaps)))
    if args.zeros_out:
        save_zeros(zeros, args.zeros_out)
        doc.add("outputs", "zeros_file", args.zeros_out)
    path = _figure_path(args, "zeros_scan.png")
    if path:
        from .figures import zeros_scan_figure

        zeros_scan_figure(path, zeros, cfg)
        _add_figure(doc, "zeros_scan", path)


def _run_zeros_info(args, doc: ReportDocument, cfg: PrecisionConfig) -> None:
    zeros = load_zeros(args.zeros)
    doc.add("inputs", "zeros_file", args.zeros)
    doc.add("results", "count", len(zeros.ordinates))
    doc.add("results", "t_max", zeros.t_max)
    doc.add("results", "field_label", zeros.field_label)
    doc.add("results", "first", zeros.ordinates[0])
    doc.add("results", "last", zeros.ordinates[-1])
    if zeros.field_label == "Q":
        estimate = zero_count_estimate(zeros.t_max)
        doc.add("results", "count_estimate", estimate)
        doc.add("results", "count_deviation", len(zeros.ordinates) - estimate)


# ---------------------------------------------------------------------------
# explicit formula


def _run_ef_check(args, doc: ReportDocument, cfg: PrecisionConfig) -> None:
    field = NumberField.parse(args.field)
    phi = parse_test_function(args.phi)
    if args.zeros:
        zeros = load_zeros(args.zeros)
        zero_source = args.zeros
    else:
        if field.label != "Q":
            raise ParseError("zeros are computed only for the rationals; pass --zeros for other fields")
        zeros = find_zeros(args.t_max, cfg)
        zero_source = f"computed to {args.t_max:g}"
    cutoff = args.prime_cutoff
    if cutoff is None:
        cutoff = float(math.ceil(math.exp(phi.support[1]))) + 1.0
    report = check_explicit_formula(phi, field, zeros, cutoff, cfg)

    doc.add("inputs", "field", field.label)
    doc.add("inputs", "discriminant", field.discriminant)
    doc.add("inputs", "phi", args.phi)
    doc.add("inputs", "zeros_source", zero_source)
    doc.add("inputs", "zero_count", report.spectral.zero_count)
    doc.add("inputs", "zero_height", zeros.t_max)
    doc.add("inputs", "prime_cutoff", cutoff)
    doc.add("spectral", "transform_at_0", report.spectral.pole_term_0)
    doc.add("spectral", "transform_at_1", report.spectral.pole_term_1)
    doc.add("spectral", "zero_sum", report.spectral.zero_sum)
    doc.add("spectral", "total", report.spectral.total)
    doc.add("geometric", "discriminant_term", report.geometric.discriminant_term)
    doc.add("geometric", "prime_sum", report.geometric.prime_sum)
    doc.add("geometric", "archimedean_real", report.geometric.archimedean_real)
    doc.add("geometric", "archimedean_complex", report.geometric.archimedean_complex)
    doc.add("geometric", "total", report.geometric.total)
    doc.add("tails", "zero_sum_tail", report.spectral.tail_estimate)
    doc.add("tails", "prime_sum_tail", report.geometric.prime_tail_estimate)
    doc.add("tails", "window_tail", report.geometric.window_tail_estimate)
    doc.add("results", "signed_difference", report.signed_difference)
    doc.add("results", "residual", report.residual)

    path = _figure_path(args, "explicit_formula.png")
    if path:
        from .figures import explicit_formula_figure

        explicit_formula_figure(path, report)
        _add_figure(doc, "explicit_formula", path)


# ---------------------------------------------------------------------------
# suspension


def _run_suspension_check(args, doc: ReportDocument, cfg: PrecisionConfig) -> None:
    curve = EllipticCurveData(args.p, args.ap)
    spec = SuspensionSpec.elliptic(curve)
    phi = parse_test_function(args.phi)
    report = check_trace_formula(phi, spec, args.kmax, args.nmax, cfg)
    weil = weil_number_check(curve)
    orbits = spec.orbit_data(args.nmax)
    mobius_ok = all(orbits.summed_counts(n) == point_counts(curve, n) for n in range(1, args.nmax + 1))
    pi, _ = frobenius_eigenvalues(curve)

    doc.add("inputs", "p", args.p)
    doc.add("inputs", "a_p", args.ap)
    doc.add("inputs", "phi", args.phi)
    doc.add("inputs", "k_max", args.kmax)
    doc.add("inputs", "n_max", args.nmax)
    doc.add("curve", "frobenius", pi)
    doc.add("curve", "base_period", spec.l)
    doc.add("curve", "conformal_weight", spec.alpha)
    doc.add("curve", "weil_deviation", weil.deviation)
    doc.add("curve", "weil_check", "pass" if weil.passed else "fail")
    doc.add("sides", "spectral", report.spectral)
    doc.add("sides", "geometric", report.geometric)
    doc.add("sides", "nweighted_geometric", report.nweighted)
    doc.add("sides", "resummation_gap", report.resummation_gap)
    doc.add("results", "residual", report.residual)
    doc.add("results", "mobius_consistent", "pass" if mobius_ok else "fail")

    path = _figure_path(args, "suspension_ladders.png")
    if path:
        from .figures import suspension_ladders_figure

        suspension_ladders_figure(path, spec, curve)
        _add_figure(doc, "suspension_ladders", path)


def _run_suspension_orbits(args, doc: ReportDocument, cfg: PrecisionConfig) -> None:
    sources = [args.p is not None or args.ap is not None, args.q is not None, args.orbits is not None]
    if sum(sources) != 1:
        raise ParseError("pick exactly one orbit source: --p/--ap, --q, or --orbits")
    curve = None
    if args.orbits:
        orbits = load_orbits(args.orbits)
        doc.add("inputs", "orbits_file", args.orbits)
    elif args.q is not None:
        orbits = covering_orbit_counts(args.q, args.nmax)
        doc.add("inputs", "covering_degree", args.q)
        doc.add("inputs", "n_max", args.nmax)
    else:
        if args.p is None or args.ap is None:
            raise ParseError("elliptic orbits need both --p and --ap")
        curve = EllipticCurveData(args.p, args.ap)
        orbits = closed_orbit_counts(curve, args.nmax)
        doc.add("inputs", "p", args.p)
        doc.add("inputs", "a_p", args.ap)
        doc.add("inputs", "n_max", args.nmax)
    for c in orbits.classes:
        doc.add("orbit_counts", f"m_{c.n}", c.count)
    if curve is not None:
        for c in orbits.classes:
            doc.add("point_counts", f"n_{c.n}", point_counts(curve, c.n))
        ok = all(
            orbits.summed_counts(c.n) == point_counts(curve, c.n) for c in orbits.classes
        )
        doc.add("results", "mobius_consistent", "pass" if ok else "fail")
    if args.orbits_out:
        save_orbits(args.orbits_out, orbits)
        doc.add("outputs", "orbits_file", args.orbits_out)


# ---------------------------------------------------------------------------
# kronecker


def _run_kronecker_solve(args, doc: ReportDocument, cfg: PrecisionConfig) -> None:
    alpha = SlopeParam.parse(args.alpha)
    g = load_coefficients(args.coeffs)
    result = solve_cohomological(g, alpha, min_divisor=args.min_divisor)
    doc.add("inputs", "alpha_label", alpha.label)
    doc.add("inputs", "alpha", alpha.alpha)
    doc.add("inputs", "coeffs_file", args.coeffs)
    doc.add("inputs", "mode_cutoff", g.mode_cutoff)
    doc.add("inputs", "min_divisor", args.min_divisor)
    doc.add("results", "obstruction", result.obstruction)
    doc.add("results", "smallest_divisor", result.smallest_divisor)
    doc.add("results", "smallest_divisor_mode", list(result.smallest_divisor_mode))
    doc.add("results", "flagged_mode_count", len(result.flagged_modes))
    doc.add("results", "small_divisor_flag", bool(result.flagged_modes))
    if result.flagged_modes:
        shown = [list(mn) for mn in result.flagged_modes[:8]]
        doc.add("results", "flagged_modes", shown)
    doc.add("results", "solution_norm", result.solution.l2_norm())
    back = leafwise_derivative(result.solution, alpha)
    target = g.copy()
    target[0, 0] = 0.0
    doc.add("results", "exactness_residual", float(np.max(np.abs(back.coefficients - target.coefficients))))
    hermitian = g.is_hermitian()
    doc.add("results", "hermitian", hermitian)
    if hermitian:
        doc.add("results", "harmonic_class", harmonic_projection(g))


def _run_kronecker_report(args, doc: ReportDocument, cfg: PrecisionConfig) -> None:
    alpha = SlopeParam.parse(args.alpha)
    report = diophantine_report(alpha, args.modes)
    doc.add("inputs", "alpha_label", alpha.label)
    doc.add("inputs", "alpha", alpha.alpha)
    doc.add("inputs", "mode_cutoff", args.modes)
    for row in report.rows:
        section = f"cutoff_{row.cutoff}"
        doc.add(section, "min_divisor", row.min_divisor)
        doc.add(section, "min_divisor_mode", list(row.min_divisor_mode))
        doc.add(section, "amplification", row.amplification)
    doc.add("results", "fitted_lower_constant", report.fitted_lower_constant())

    path = _figure_path(args, "kronecker_minima.png")
    if path:
        from .figures import kronecker_minima_figure

        kronecker_minima_figure(path, report)
        _add_figure(doc, "kronecker_minima", path)


# ---------------------------------------------------------------------------
# lefschetz


def _run_lefschetz_field(args, doc: ReportDocument, cfg: PrecisionConfig) -> None:
    if (args.places is None) == (args.signature is None):
        raise ParseError("pass exactly one of --places or --signature")
    if args.places:
        places, action = load_places_action(args.places)
        doc.add("inputs", "places_file", args.places)
    else:
        r1, r2 = _parse_int_pair(args.signature)
        places = InfinitePlaceSet.from_signature(r1, r2)
        if args.perm:
            perm = [int(x) for x in args.perm.split(",")]
            action = AutomorphismAction.from_permutation(perm)
        else:
            action = AutomorphismAction.identity(r1 + r2)
    doc.add("inputs", "r1", places.r1)
    doc.add("inputs", "r2", places.r2)
    doc.add("inputs", "permutation", list(action.permutation))
    doc.add("results", "euler_characteristic", euler_characteristic_infinite(places))
    doc.add("results", "action_order", action.order)
    doc.add("results", "fixed_places", arithmetic_lefschetz(places, action))
    doc.add("results", "orbit_count", action.orbit_count())
    burnside = sum(arithmetic_lefschetz(places, action.power(j)) for j in range(action.order))
    doc.add("results", "burnside_sum", burnside)
    doc.add(
        "results",
        "burnside_identity",
        "pass" if burnside == action.order * action.orbit_count() else "fail",
    )


def _run_lefschetz_dynamical(args, doc: ReportDocument, cfg: PrecisionConfig) -> None:
    data = []
    for spec in args.fixed or []:
        parts = spec.split(",")
        if len(parts) != 2:
            raise ParseError(f"expected TRACE,EPS, got {spec!r}")
        try:
            data.append(FixedPointDatum(float(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ParseError(f"bad fixed-point spec {spec!r}") from exc
    doc.add("inputs", "fixed_point_count", len(data))
    doc.add("inputs", "orbit_only", bool(args.orbit_only))
    if args.orbit_only:
        value = compact_support_vanishing_check(True, data)
        doc.add("results", "vanishing", "pass" if value == 0.0 else "fail")
    else:
        value = dynamical_lefschetz(data)
    doc.add("results", "lefschetz_number", value)


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zrl", description="Numerical checks of determinant, trace and fixed-point formulas."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("kv", "text"), default="kv", help="report format")
    common.add_argument("--out", help="write the report to this path instead of stdout")
    common.add_argument("--figures", help="directory for diagnostic figures")

    top = parser.add_subparsers(dest="command", required=True)

    regdet_p = top.add_parser("regdet", help="regularized determinants and local factors")
    regdet_sub = regdet_p.add_subparsers(dest="subcommand", required=True)
    p = regdet_sub.add_parser("euler-factor", parents=[common], help="local-factor identity at one s")
    p.add_argument("--place", required=True, help="finite:N, real, or complex")
    p.add_argument("--s", required=True, help="complex s as RE or RE,IM")
    p.set_defaults(handler=_run_regdet_euler_factor)
    p = regdet_sub.add_parser("ladder", parents=[common], help="ladder data and determinant routes")
    p.add_argument("--place", required=True, help="finite:N, real, or complex")
    p.add_argument("--s", required=True, help="complex s as RE or RE,IM")
    p.set_defaults(handler=_run_regdet_ladder)

    zeros_p = top.add_parser("zeros", help="nontrivial zeros on the critical line")
    zeros_sub = zeros_p.add_subparsers(dest="subcommand", required=True)
    p = zeros_sub.add_parser("find", parents=[common], help="locate zeros up to a height")
    p.add_argument("--t-max", type=float, default=100.0, help="search height (default 100)")
    p.add_argument("--zeros-out", help="write the ordinates to this file")
    p.set_defaults(handler=_run_zeros_find)
    p = zeros_sub.add_parser("info", parents=[common], help="summarize a zeros file")
    p.add_argument("--zeros", required=True, help="ordinates file")
    p.set_defaults(handler=_run_zeros_info)

    ef_p = top.add_parser("ef", help="two-sided explicit-formula check")
    ef_sub = ef_p.add_subparsers(dest="subcommand", required=True)
    p = ef_sub.add_parser("check", parents=[common], help="evaluate both sides and the residual")
    p.add_argument("--field", default="q", help="q or disc:D (fundamental discriminant)")
    p.add_argument("--phi", required=True, help="bump:c,w or gauss:c,sigma[,m]")
    p.add_argument("--prime-cutoff", type=float, default=None, help="largest prime-power norm")
    p.add_argument("--zeros", help="zeros file (required for fields other than q)")
    p.add_argument("--t-max", type=float, default=100.0, help="zero height when computing")
    p.set_defaults(handler=_run_ef_check)

    susp_p = top.add_parser("suspension", help="trace formula on suspension flows")
    susp_sub = susp_p.add_subparsers(dest="subcommand", required=True)
    p = susp_sub.add_parser("check", parents=[common], help="spectral vs geometric residual")
    p.add_argument("--p", type=int, required=True, help="base prime")
    p.add_argument("--ap", type=int, required=True, help="Frobenius trace")
    p.add_argument("--phi", required=True, help="bump:c,w or gauss:c,sigma[,m]")
    p.add_argument("--kmax", type=int, default=400, help="ladder and orbit harmonic cutoff")
    p.add_argument("--nmax", type=int, default=12, help="orbit degree cutoff")
    p.set_defaults(handler=_run_suspension_check)
    p = susp_sub.add_parser("orbits", parents=[common], help="closed-orbit count table")
    p.add_argument("--p", type=int, help="base prime (with --ap)")
    p.add_argument("--ap", type=int, help="Frobenius trace (with --p)")
    p.add_argument("--q", type=int, help="covering degree source")
    p.add_argument("--orbits", help="read orbit counts from this file")
    p.add_argument("--orbits-out", help="write orbit counts to this file")
    p.add_argument("--nmax", type=int, default=12, help="orbit degree cutoff")
    p.set_defaults(handler=_run_suspension_orbits)

    kron_p = top.add_parser("kronecker", help="leafwise cohomology on the 2-torus")
    kron_sub = kron_p.add_subparsers(dest="subcommand", required=True)
    p = kron_sub.add_parser("solve", parents=[common], help="solve the cohomological equation")
    p.add_argument("--alpha", required=True, help="golden, sqrt2, liouville, or a number")
    p.add_argument("--coeffs", required=True, help="coefficient file with 'm n re im' lines")
    p.add_argument("--min-divisor", type=float, default=1e-12, help="small-divisor flag threshold")
    p.set_defaults(handler=_run_kronecker_solve)
    p = kron_sub.add_parser("report", parents=[common], help="small-divisor minima across cutoffs")
    p.add_argument("--alpha", required=True, help="golden, sqrt2, liouville, or a number")
    p.add_argument("--modes", type=int, default=64, help="largest mode cutoff")
    p.set_defaults(handler=_run_kronecker_report)

    lef_p = top.add_parser("lefschetz", help="fixed-point counts")
    lef_sub = lef_p.add_subparsers(dest="subcommand", required=True)
    p = lef_sub.add_parser("field", parents=[common], help="place permutation fixed-point count")
    p.add_argument("--places", help="file: 'r1 r2' header plus permutation line")
    p.add_argument("--signature", help="R1,R2 (identity action unless --perm)")
    p.add_argument("--perm", help="comma-separated permutation indices")
    p.set_defaults(handler=_run_lefschetz_field)
    p = lef_sub.add_parser("dynamical", parents=[common], help="weighted fixed-point sum")
    p.add_argument("--fixed", action="append", help="TRACE,EPS (repeatable)")
    p.add_argument("--orbit-only", action="store_true", help="assert the empty-sum vanishing")
    p.set_defaults(handler=_run_lefschetz_dynamical)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    doc = ReportDocument()
    try:
        cfg = default_config()
        args.handler(args, doc, cfg)
        rendered = doc.render(args.format)
        if args.out:
            with open(args.out, "w") as handle:
                handle.write(rendered)
        else:
            sys.stdout.write(rendered)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ZrlError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
