import math

import pytest

from zrl.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def kv(out: str) -> dict:
    pairs = {}
    for line in out.splitlines():
        key, _, value = line.partition(" = ")
        pairs[key] = value
    return pairs


# ---------------------------------------------------------------------------
# exit codes


def test_exit_code_success(capsys):
    code, _ = run(capsys, "regdet", "euler-factor", "--place", "real", "--s", "2")
    assert code == 0


def test_exit_code_domain_error(capsys):
    code, _ = run(capsys, "regdet", "euler-factor", "--place", "finite:1", "--s", "2")
    assert code == 1


def test_exit_code_parse_error(capsys, tmp_path):
    bad = tmp_path / "zeros.txt"
    bad.write_text("abc\n")
    code, _ = run(capsys, "zeros", "info", "--zeros", str(bad))
    assert code == 2


def test_exit_code_missing_file(capsys, tmp_path):
    code, _ = run(capsys, "zeros", "info", "--zeros", str(tmp_path / "none.txt"))
    assert code == 1


def test_exit_code_usage_error(capsys):
    code = main(["regdet", "euler-factor", "--place", "real"])  # missing --s
    assert code == 2


def test_bad_precision_env_is_a_clean_error(capsys, monkeypatch):
    monkeypatch.setenv("ZRL_PRECISION", "bogus")
    code = main(["zeros", "find", "--t-max", "30"])
    assert code == 1
    err = capsys.readouterr().err
    assert "ZRL_PRECISION" in err


def test_precision_env_is_honored(capsys, monkeypatch):
    monkeypatch.setenv("ZRL_PRECISION", "1e-8")
    code, out = run(capsys, "regdet", "euler-factor", "--place", "real", "--s", "2")
    assert code == 0
    assert kv(out)["results.zeta_p_inverse_match"] == "pass"


# ---------------------------------------------------------------------------
# determinism and the worked example


def test_real_place_worked_example(capsys):
    code, out = run(capsys, "regdet", "euler-factor", "--place", "real", "--s", "2")
    assert code == 0
    pairs = kv(out)
    assert pairs["results.value"] == "4.44288293816"
    assert pairs["results.zeta_p_inverse_match"] == "pass"


def test_kv_output_is_deterministic(capsys):
    _, first = run(capsys, "zeros", "find", "--t-max", "60")
    _, second = run(capsys, "zeros", "find", "--t-max", "60")
    assert first == second


def test_text_format_renders_sections(capsys):
    code, out = run(
        capsys, "regdet", "euler-factor", "--place", "real", "--s", "2", "--format", "text"
    )
    assert code == 0
    assert "[results]" in out


def test_out_writes_file(tmp_path, capsys):
    dest = tmp_path / "report.txt"
    code, out = run(
        capsys, "regdet", "euler-factor", "--place", "real", "--s", "2", "--out", str(dest)
    )
    assert code == 0
    assert out == ""
    assert "results.value = 4.44288293816" in dest.read_text()


# ---------------------------------------------------------------------------
# subcommand round trips


def test_zeros_find_and_info_roundtrip(tmp_path, capsys):
    zfile = tmp_path / "zeros.txt"
    code, out = run(capsys, "zeros", "find", "--t-max", "60", "--zeros-out", str(zfile))
    assert code == 0
    pairs = kv(out)
    count = int(pairs["results.count"])
    assert math.isclose(float(pairs["results.first"]), 14.134725, rel_tol=1e-6)

    code, out = run(capsys, "zeros", "info", "--zeros", str(zfile))
    assert code == 0
    assert int(kv(out)["results.count"]) == count


def test_ef_check_over_q(capsys):
    code, out = run(
        capsys, "ef", "check", "--phi", "gauss:2,0.3", "--t-max", "100"
    )
    assert code == 0
    pairs = kv(out)
    assert float(pairs["results.residual"]) < 1e-6
    assert int(pairs["inputs.zero_count"]) == 29


def test_ef_check_quadratic_needs_zeros_file(capsys):
    # computed zeros exist only over the rationals; this is a usage error
    code, _ = run(capsys, "ef", "check", "--field", "disc:-4", "--phi", "gauss:2,0.3")
    assert code == 2


def test_ef_check_quadratic_with_zeros_file(tmp_path, capsys):
    # the spectral side over a quadratic field pairs against user-supplied
    # ordinates; the run must complete and report both sides
    zfile = tmp_path / "zeros.txt"
    run(capsys, "zeros", "find", "--t-max", "60", "--zeros-out", str(zfile))
    code, out = run(
        capsys, "ef", "check", "--field", "disc:-4", "--phi", "gauss:2,0.3",
        "--zeros", str(zfile),
    )
    assert code == 0
    pairs = kv(out)
    assert "results.residual" in pairs
    assert "geometric.archimedean_complex" in pairs


def test_suspension_check(capsys):
    code, out = run(
        capsys, "suspension", "check", "--p", "5", "--ap", "2", "--phi",
        "gauss:1.609437912434,0.15",
    )
    assert code == 0
    pairs = kv(out)
    assert float(pairs["results.residual"]) < 1e-6
    assert pairs["results.mobius_consistent"] == "pass"


def test_suspension_orbits_table(tmp_path, capsys):
    ofile = tmp_path / "orbits.txt"
    code, out = run(
        capsys, "suspension", "orbits", "--p", "5", "--ap", "2", "--nmax", "6",
        "--orbits-out", str(ofile),
    )
    assert code == 0
    pairs = kv(out)
    assert pairs["orbit_counts.m_1"] == "4"
    assert pairs["orbit_counts.m_2"] == "14"
    assert ofile.exists()

    code, out = run(capsys, "suspension", "orbits", "--orbits", str(ofile))
    assert code == 0
    assert kv(out)["orbit_counts.m_2"] == "14"


def test_suspension_orbits_source_exclusivity(capsys):
    code, _ = run(capsys, "suspension", "orbits", "--p", "5", "--ap", "2", "--q", "2")
    assert code == 2  # conflicting sources are a usage error


def test_kronecker_solve(tmp_path, capsys):
    coeffs = tmp_path / "coeffs.txt"
    coeffs.write_text("1 -1 1.0 0.0\n-1 1 1.0 0.0\n")
    code, out = run(capsys, "kronecker", "solve", "--alpha", "golden", "--coeffs", str(coeffs))
    assert code == 0
    pairs = kv(out)
    assert float(pairs["results.exactness_residual"]) < 1e-12
    assert pairs["results.small_divisor_flag"] == "false"


def test_kronecker_report(capsys):
    code, out = run(capsys, "kronecker", "report", "--alpha", "golden", "--modes", "16")
    assert code == 0
    pairs = kv(out)
    assert float(pairs["results.fitted_lower_constant"]) > 0.5


def test_lefschetz_field_signature(capsys):
    code, out = run(capsys, "lefschetz", "field", "--signature", "2,0", "--perm", "1,0")
    assert code == 0
    pairs = kv(out)
    assert pairs["results.fixed_places"] == "0"
    assert pairs["results.burnside_identity"] == "pass"


def test_lefschetz_dynamical(capsys):
    code, out = run(
        capsys, "lefschetz", "dynamical", "--fixed", "2.0,1", "--fixed", "3.0,-1"
    )
    assert code == 0
    assert float(kv(out)["results.lefschetz_number"]) == pytest.approx(-1.0)


def test_lefschetz_orbit_only(capsys):
    code, out = run(capsys, "lefschetz", "dynamical", "--orbit-only")
    assert code == 0
    assert kv(out)["results.vanishing"] == "pass"


# ---------------------------------------------------------------------------
# figures


def test_figures_directory_renders_png(tmp_path, capsys):
    figdir = tmp_path / "figs"
    code, _ = run(
        capsys, "lefschetz", "field", "--signature", "1,1", "--figures", str(figdir)
    )
    assert code == 0
    # the cheap subcommands write no figure; a figure-bearing one does
    code, _ = run(
        capsys, "kronecker", "report", "--alpha", "golden", "--modes", "8",
        "--figures", str(figdir),
    )
    assert code == 0
    pngs = list(figdir.glob("*.png"))
    assert pngs, "expected at least one rendered figure"
