import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zrl.errors import DomainError, ParseError, SmallDivisorError
from zrl.kronecker import (
    TWO_PI_I,
    DiophantineReport,
    FourierFunction2D,
    SlopeParam,
    diophantine_report,
    harmonic_projection,
    leafwise_derivative,
    load_coefficients,
    save_coefficients,
    solve_cohomological,
)


GOLDEN = SlopeParam.golden()


def _random_hermitian(m_cutoff: int, rng: np.random.Generator) -> FourierFunction2D:
    f = FourierFunction2D.zeros(m_cutoff)
    for _ in range(3 * m_cutoff):
        m = int(rng.integers(-m_cutoff, m_cutoff + 1))
        n = int(rng.integers(-m_cutoff, m_cutoff + 1))
        if (m, n) == (0, 0):
            continue
        z = complex(rng.normal(), rng.normal())
        f[m, n] = f[m, n] + z
        f[-m, -n] = f[-m, -n] + z.conjugate()
    f[0, 0] = complex(rng.normal(), 0.0)
    return f


# ---------------------------------------------------------------------------
# slopes


def test_slope_values():
    assert GOLDEN.alpha == pytest.approx((1.0 + math.sqrt(5.0)) / 2.0)
    assert SlopeParam.sqrt2().alpha == pytest.approx(math.sqrt(2.0))
    assert SlopeParam.liouville_like().alpha == pytest.approx(0.110001)


def test_slope_parse():
    assert SlopeParam.parse("golden").label == "golden"
    assert SlopeParam.parse("sqrt2").label == "sqrt2"
    assert SlopeParam.parse("liouville").label == "liouville"
    assert SlopeParam.parse("0.3").alpha == pytest.approx(0.3)
    with pytest.raises(DomainError):
        SlopeParam.parse("slope")


def test_slope_validation():
    # non-finite slopes are rejected up front; rational ones only fail at solve
    with pytest.raises(DomainError):
        SlopeParam(float("nan"))
    with pytest.raises(DomainError):
        SlopeParam(float("inf"))


# ---------------------------------------------------------------------------
# coefficient grids


def test_grid_shape_validation():
    with pytest.raises(DomainError):
        FourierFunction2D(np.zeros((4, 5), dtype=complex))
    with pytest.raises(DomainError):
        FourierFunction2D(np.zeros((4, 4), dtype=complex))


def test_mode_indexing():
    f = FourierFunction2D.zeros(3)
    f[2, -1] = 1.5 + 0.5j
    assert f[2, -1] == 1.5 + 0.5j
    assert f[0, 0] == 0.0
    with pytest.raises(DomainError):
        f[4, 0]


def test_hermitian_detection():
    f = FourierFunction2D.hermitian_mode_pair(1, 2, 0.3 + 0.7j, 4)
    assert f.is_hermitian()
    g = FourierFunction2D.single_mode(1, 2, 1.0 + 0.0j, 4)
    assert not g.is_hermitian()


# ---------------------------------------------------------------------------
# leafwise derivative


def test_derivative_of_constant_is_zero():
    f = FourierFunction2D.constant(3.0, 5)
    assert leafwise_derivative(f, GOLDEN).l2_norm() == 0.0


def test_derivative_single_modes():
    f = FourierFunction2D.single_mode(0, 1, 1.0, 4)
    df = leafwise_derivative(f, GOLDEN)
    assert df[0, 1] == pytest.approx(TWO_PI_I)
    g = FourierFunction2D.single_mode(1, -1, 1.0, 4)
    dg = leafwise_derivative(g, GOLDEN)
    assert dg[1, -1] == pytest.approx(TWO_PI_I * (GOLDEN.alpha - 1.0))


# ---------------------------------------------------------------------------
# cohomological equation


def test_solve_constant_source():
    g = FourierFunction2D.constant(2.5, 4)
    result = solve_cohomological(g, GOLDEN)
    assert result.obstruction == pytest.approx(2.5)
    assert result.solution.l2_norm() == 0.0


def test_solve_single_mode():
    g = FourierFunction2D.single_mode(1, -1, 1.0, 4)
    result = solve_cohomological(g, GOLDEN)
    want = 1.0 / (TWO_PI_I * (GOLDEN.alpha - 1.0))
    assert result.solution[1, -1] == pytest.approx(want)
    assert result.obstruction == 0.0


def test_solve_exactness_on_random_grid():
    rng = np.random.default_rng(7)
    g = _random_hermitian(16, rng)
    result = solve_cohomological(g, GOLDEN)
    recovered = leafwise_derivative(result.solution, GOLDEN)
    residual = g.copy()
    residual[0, 0] = residual[0, 0] - result.obstruction
    diff = recovered.coefficients - residual.coefficients
    assert np.max(np.abs(diff)) < 1e-12 * max(1.0, g.l2_norm())


@settings(max_examples=30, deadline=None)
@given(
    m=st.integers(min_value=-6, max_value=6),
    n=st.integers(min_value=-6, max_value=6),
    re=st.floats(min_value=-5.0, max_value=5.0, allow_subnormal=False),
    im=st.floats(min_value=-5.0, max_value=5.0, allow_subnormal=False),
)
def test_solve_exactness_property(m, n, re, im):
    if (m, n) == (0, 0) or abs(complex(re, im)) < 1e-6:
        return
    g = FourierFunction2D.single_mode(m, n, complex(re, im), 6)
    result = solve_cohomological(g, GOLDEN)
    recovered = leafwise_derivative(result.solution, GOLDEN)
    assert abs(recovered[m, n] - complex(re, im)) < 1e-10 * abs(complex(re, im))


def test_rational_slope_exact_zero_divisor():
    g = FourierFunction2D.single_mode(2, -1, 1.0, 4)
    with pytest.raises(DomainError):
        solve_cohomological(g, SlopeParam(0.5))


def test_small_divisor_flagging():
    slope = SlopeParam.liouville_like()
    g = FourierFunction2D.hermitian_mode_pair(100, -11, 1.0, 100)
    result = solve_cohomological(g, slope, min_divisor=1e-3)
    assert result.flagged_modes
    assert (100, -11) in result.flagged_modes or (-100, 11) in result.flagged_modes
    assert result.smallest_divisor < 1e-3


def test_small_divisor_strict_raises():
    slope = SlopeParam.liouville_like()
    g = FourierFunction2D.hermitian_mode_pair(100, -11, 1.0, 100)
    with pytest.raises(SmallDivisorError) as err:
        solve_cohomological(g, slope, min_divisor=1e-3, strict=True)
    assert err.value.modes


def test_golden_slope_never_flags_at_default_threshold():
    rng = np.random.default_rng(11)
    g = _random_hermitian(64, rng)
    result = solve_cohomological(g, GOLDEN)
    assert not result.flagged_modes


# ---------------------------------------------------------------------------
# harmonic projection


def test_projection_of_constant():
    g = FourierFunction2D.constant(1.25, 4)
    assert harmonic_projection(g) == pytest.approx(1.25)


def test_projection_annihilates_exact_forms():
    rng = np.random.default_rng(3)
    f = _random_hermitian(16, rng)
    df = leafwise_derivative(f, GOLDEN)
    assert abs(harmonic_projection(df)) < 1e-14


def test_projection_requires_hermitian():
    g = FourierFunction2D.single_mode(1, 0, 1.0j, 3)
    with pytest.raises(DomainError):
        harmonic_projection(g)


def test_projection_is_idempotent_on_its_image():
    rng = np.random.default_rng(5)
    g = _random_hermitian(8, rng)
    c = harmonic_projection(g)
    h = FourierFunction2D.constant(c, 8)
    assert harmonic_projection(h) == pytest.approx(c)


# ---------------------------------------------------------------------------
# diophantine report


def test_diophantine_rows_structure():
    report = diophantine_report(GOLDEN, 64)
    assert isinstance(report, DiophantineReport)
    cutoffs = [row.cutoff for row in report.rows]
    assert cutoffs == sorted(cutoffs)
    assert cutoffs[-1] == 64
    for row in report.rows:
        assert row.min_divisor > 0.0
        assert row.amplification > 0.0


def test_golden_fitted_constant_is_positive_and_stable():
    report = diophantine_report(GOLDEN, 64)
    c = report.fitted_lower_constant()
    assert c > 0.5  # golden ratio: worst constant ~ 1/sqrt(5) * 2 pi scaling


def test_liouville_like_minima_collapse():
    golden = diophantine_report(GOLDEN, 128)
    liou = diophantine_report(SlopeParam.liouville_like(), 128)
    assert liou.fitted_lower_constant() < 0.1 * golden.fitted_lower_constant()


# ---------------------------------------------------------------------------
# file I/O


def test_coefficients_roundtrip(tmp_path):
    rng = np.random.default_rng(9)
    f = _random_hermitian(6, rng)
    path = tmp_path / "coeffs.txt"
    save_coefficients(path, f)
    back = load_coefficients(path)
    assert back.mode_cutoff >= 6 or np.allclose(
        back.coefficients,
        f.coefficients[: back.coefficients.shape[0], : back.coefficients.shape[1]],
    )
    for m in range(-6, 7):
        for n in range(-6, 7):
            if abs(m) <= back.mode_cutoff and abs(n) <= back.mode_cutoff:
                assert back[m, n] == pytest.approx(f[m, n])


def test_load_coefficients_parse_errors(tmp_path):
    path = tmp_path / "coeffs.txt"
    path.write_text("0 1 1.0\n")
    with pytest.raises(ParseError):
        load_coefficients(path)
    path.write_text("0 x 1.0 0.0\n")
    with pytest.raises(ParseError) as err:
        load_coefficients(path)
    assert err.value.line_number == 1
