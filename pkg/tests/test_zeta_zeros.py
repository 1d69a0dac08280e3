import math

import mpmath as mp
import pytest

from zrl.config import PrecisionConfig
from zrl.errors import DomainError, OrderError, ParseError
from zrl.zeta_zeros import (
    RS_THRESHOLD,
    ZeroList,
    find_zeros,
    hardy_z,
    load_zeros,
    riemann_siegel_theta,
    save_zeros,
    zero_count_estimate,
)

mp.mp.dps = 30

# first ten ordinates of 1/2 + i*gamma zeros, 20 significant digits,
# from mp.zetazero at 30-digit working precision (frozen)
FIRST_TEN = (
    14.134725141734693790,
    21.022039638771554993,
    25.010857580145688763,
    30.424876125859513210,
    32.935061587739189691,
    37.586178158825671257,
    40.918719012147495187,
    43.327073280914999519,
    48.005150881167159727,
    49.773832477672302182,
)


def test_frozen_ordinates_match_mpmath():
    for j, g in enumerate(FIRST_TEN, start=1):
        assert abs(float(mp.im(mp.zetazero(j))) - g) < 1e-12


@pytest.mark.parametrize("t", [14.0, 50.0, 120.5, 500.0, 1000.0])
def test_theta_matches_mpmath(t):
    want = float(mp.siegeltheta(t))
    assert abs(riemann_siegel_theta(t) - want) < 1e-10 * max(1.0, abs(want))


@pytest.mark.parametrize("t", [15.0, 30.0, 100.0, 180.0, RS_THRESHOLD - 1.0])
def test_hardy_z_low_range(t, cfg):
    # Euler-Maclaurin regime: near machine precision
    want = float(mp.siegelz(t))
    assert abs(float(hardy_z(t, cfg)) - want) < 1e-10


@pytest.mark.parametrize("t", [RS_THRESHOLD + 1.0, 350.0, 700.0, 1500.0, 5000.0])
def test_hardy_z_high_range(t, cfg):
    # main-sum-plus-corrections regime: bounded by the correction order
    want = float(mp.siegelz(t))
    assert abs(float(hardy_z(t, cfg)) - want) < 5e-7


def test_hardy_z_is_real_and_vectorized(cfg):
    import numpy as np

    out = hardy_z(np.array([20.0, 215.0, 300.0]), cfg)
    assert out.shape == (3,)
    assert out.dtype == np.float64


def test_find_zeros_to_100(zeros_to_100):
    assert len(zeros_to_100) == 29
    for got, want in zip(zeros_to_100.ordinates, FIRST_TEN):
        assert abs(got - want) < 1e-7
    assert zeros_to_100.source == "computed"


def test_zero_count_estimate_tracks_actual_count(zeros_to_100):
    assert abs(len(zeros_to_100) - zero_count_estimate(100.0)) <= 1.0


def test_find_zeros_domain():
    with pytest.raises(DomainError):
        find_zeros(5.0)
    with pytest.raises(DomainError):
        find_zeros(1.0e6)


def test_zero_list_ordering():
    with pytest.raises(OrderError):
        ZeroList((14.13, 14.13), 20.0)
    with pytest.raises(OrderError):
        ZeroList((21.0, 14.0), 30.0)
    with pytest.raises(OrderError):
        ZeroList((-3.0,), 10.0)


def test_save_load_roundtrip(tmp_path, zeros_to_100):
    path = tmp_path / "zeros.txt"
    save_zeros(zeros_to_100, path)
    back = load_zeros(path, t_max=100.0)
    assert back.source == "file"
    assert back.field_label == "Q"
    assert len(back) == len(zeros_to_100)
    for a, b in zip(back.ordinates, zeros_to_100.ordinates):
        assert abs(a - b) < 1e-14


def test_load_zeros_comments_and_field_label(tmp_path):
    path = tmp_path / "zeros.txt"
    path.write_text("# field: Q(i)\n# a comment\n\n14.1347251417\n21.0220396388\n")
    zeros = load_zeros(path)
    assert zeros.field_label == "Q(i)"
    assert len(zeros) == 2
    assert zeros.t_max == pytest.approx(21.0220396388)


def test_load_zeros_parse_error_line_number(tmp_path):
    path = tmp_path / "zeros.txt"
    path.write_text("14.13\nnot-a-number\n")
    with pytest.raises(ParseError) as err:
        load_zeros(path)
    assert err.value.line_number == 2


def test_load_zeros_rejects_nonpositive(tmp_path):
    path = tmp_path / "zeros.txt"
    path.write_text("0.0\n")
    with pytest.raises(ParseError):
        load_zeros(path)


def test_load_zeros_rejects_descending(tmp_path):
    path = tmp_path / "zeros.txt"
    path.write_text("21.02\n14.13\n")
    with pytest.raises(OrderError):
        load_zeros(path)


def test_counting_function_against_known_values():
    # N(T) for T = 100 is 29; the smooth estimate should sit within one
    assert round(zero_count_estimate(100.0)) == 29
    assert abs(zero_count_estimate(50.0) - 10.0) <= 1.5


def test_hardy_z_sign_change_at_first_zero(cfg):
    g = FIRST_TEN[0]
    assert float(hardy_z(g - 1e-4, cfg)) * float(hardy_z(g + 1e-4, cfg)) < 0.0


def test_theta_derivative_consistency():
    # theta grows like (t/2)log(t/2pi) - t/2; check the finite difference
    t, h = 300.0, 1e-5
    num = (riemann_siegel_theta(t + h) - riemann_siegel_theta(t - h)) / (2 * h)
    want = 0.5 * math.log(t / (2.0 * math.pi))
    assert abs(num - want) < 1e-5
