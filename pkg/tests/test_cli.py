"""Command-line surface: artifact layout, exit codes, config handling.

Most cases drive cli.main() in process; one subprocess case exercises the
installed console script end to end.
"""

import json
import subprocess
import sys

import pytest

from ncosc import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_rows(out):
    lines = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    return lines[0], [ln.split(",") for ln in lines[1:]]


# ---------------------------------------------------------------- spectrum

def test_spectrum_ground_state_and_ordering(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--emax", "6", "--no-timestamp")
    assert code == 0
    header, rows = csv_rows(out)
    assert header == "n,n_theta,m,lambda,k,ell_tilde,energy"
    assert rows[0] == ["0", "0", "0", "0", "0.5", "1", "2.5"]
    energies = [float(r[-1]) for r in rows]
    assert energies == sorted(energies)
    assert all(e <= 6.0 for e in energies)


def test_spectrum_deterministic_output(capsys):
    args = ("spectrum", "--emax", "7", "--alpha", "1", "--no-timestamp")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second
    assert "# generated" not in first


def test_spectrum_json_mirrors_csv(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--emax", "6", "--format", "json",
                           "--no-timestamp")
    assert code == 0
    payload = json.loads(out)
    assert "generated" not in payload
    _, rows = csv_rows(run_cli(capsys, "spectrum", "--emax", "6", "--no-timestamp")[1])
    assert len(payload["rows"]) == len(rows)
    assert payload["rows"][0]["energy"] == 2.5


def test_spectrum_timestamp_present_by_default(capsys):
    _, out, _ = run_cli(capsys, "spectrum", "--emax", "4")
    assert "# generated " in out


def test_spectrum_potential_shift_moves_every_level(capsys):
    # dropping the well floor by 1 with the cutoff lowered by 1 selects the
    # same states, each shifted down by exactly 1
    _, base, _ = run_cli(capsys, "spectrum", "--emax", "6", "--no-timestamp")
    _, shifted, _ = run_cli(capsys, "spectrum", "--emax", "5", "--v0", "1",
                            "--no-timestamp")
    _, rows_a = csv_rows(base)
    _, rows_b = csv_rows(shifted)
    assert len(rows_a) == len(rows_b)
    for a, b in zip(rows_a, rows_b):
        assert a[:6] == b[:6]
        assert float(b[6]) == pytest.approx(float(a[6]) - 1.0, abs=1e-15)


def test_spectrum_explicit_m_cap(capsys):
    _, out, _ = run_cli(capsys, "spectrum", "--emax", "8", "--m", "1",
                        "--no-timestamp")
    _, rows = csv_rows(out)
    assert {r[2] for r in rows} <= {"-1", "0", "1"}


def test_spectrum_rejects_fall_to_center(capsys):
    code, _, err = run_cli(capsys, "spectrum", "--gamma", "-0.3")
    assert code == 2
    assert "error:" in err


# ------------------------------------------------------------ wavefunction

def test_wavefunction_norm_and_phase_structure(capsys):
    code, out, _ = run_cli(capsys, "wavefunction", "--n", "0", "--ntheta", "0",
                           "--m", "1", "--beta", "0.5", "--format", "json",
                           "--no-timestamp")
    assert code == 0
    payload = json.loads(out)
    assert payload["norm"] == pytest.approx(1.0, abs=1e-6)
    # |psi| must not depend on phi
    by_angle = {}
    for row in payload["rows"]:
        mag = abs(complex(row["re_psi"], row["im_psi"]))
        by_angle.setdefault((row["r"], row["theta"]), []).append(mag)
    for mags in by_angle.values():
        assert max(mags) - min(mags) <= 1e-15 * max(mags)


def test_wavefunction_radial_node_count(capsys):
    code, out, _ = run_cli(capsys, "wavefunction", "--n", "2", "--points", "64",
                           "--ra", "0.05", "--rb", "6", "--no-timestamp")
    assert code == 0
    _, rows = csv_rows(out)
    slice_ = [float(r[3]) for r in rows if r[1] == rows[0][1] and r[2] == rows[0][2]]
    signs = [v > 0 for v in slice_]
    assert sum(a != b for a, b in zip(signs, signs[1:])) == 2


def test_wavefunction_rejects_inadmissible_sector(capsys):
    code, _, err = run_cli(capsys, "wavefunction", "--beta", "-2", "--m", "1")
    assert code == 2
    assert "error:" in err


def test_wavefunction_energy_matches_spectrum_row(capsys):
    _, table, _ = run_cli(capsys, "spectrum", "--emax", "8", "--alpha", "1",
                          "--beta", "0.5", "--gamma", "2", "--no-timestamp")
    _, rows = csv_rows(table)
    n, nt, m = rows[3][0], rows[3][1], rows[3][2]
    _, out, _ = run_cli(capsys, "wavefunction", "--n", n, "--ntheta", nt,
                        "--m", m, "--alpha", "1", "--beta", "0.5",
                        "--gamma", "2", "--format", "json", "--no-timestamp")
    payload = json.loads(out)
    assert payload["state"]["energy"] == float(rows[3][6])


# -------------------------------------------------------------- propagator

def test_propagator_routes_agree_at_defaults(capsys):
    code, out, _ = run_cli(capsys, "propagator", "--format", "json",
                           "--no-timestamp")
    assert code == 0
    vals = {row["quantity"]: row["value"] for row in json.loads(out)["rows"]}
    assert vals["rel_diff_spectral_vs_closed"] <= 1e-8


def test_propagator_lattice_route(capsys):
    code, out, _ = run_cli(capsys, "propagator", "--lattice", "--slices", "64",
                           "--ra", "0.8", "--rb", "1.2", "--tau", "0.5",
                           "--format", "json", "--no-timestamp")
    assert code == 0
    vals = {row["quantity"]: row["value"] for row in json.loads(out)["rows"]}
    assert vals["rel_diff_lattice_vs_closed"] <= 1e-3


def test_propagator_rejects_zero_time(capsys):
    code, _, err = run_cli(capsys, "propagator", "--tau", "0")
    assert code == 2
    assert "error:" in err


def test_propagator_reports_unreached_tolerance(capsys):
    code, out, err = run_cli(capsys, "propagator", "--n", "5", "--tol", "1e-15",
                             "--no-timestamp")
    assert code == 3
    assert "raise the spectral cutoff above --n 5" in err
    assert "closed" in out  # artifact still emitted


# ------------------------------------------------------------------ verify

def test_verify_suite_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "specfun",
                           "--no-timestamp")
    assert code == 0
    header, rows = csv_rows(out)
    assert header == "suite,check,passed,observed,tolerance"
    assert len(rows) >= 5
    assert all(r[2] == "true" for r in rows)
    assert "# passed" in out


def test_verify_fails_under_zero_tolerance(capsys):
    code, _, _ = run_cli(capsys, "verify", "--suite", "specfun",
                         "--tol-scale", "0")
    assert code == 1


def test_verify_rejects_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", "nonsense"])
    assert exc.value.code == 2
    capsys.readouterr()


# ------------------------------------------------------------------ config

def test_config_supplies_and_cli_overrides(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# shared settings\nemax = 4\nalpha = 1\nno-timestamp = true\n")
    _, out, _ = run_cli(capsys, "spectrum", "--config", str(cfg))
    assert "# generated" not in out
    _, rows = csv_rows(out)
    assert all(float(r[6]) <= 4.0 for r in rows)
    # explicit flag beats the file
    _, out2, _ = run_cli(capsys, "spectrum", "--config", str(cfg), "--emax", "6")
    _, rows2 = csv_rows(out2)
    assert len(rows2) > len(rows)


def test_config_unknown_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("emaxx = 4\n")
    with pytest.raises(SystemExit) as exc:
        cli.main(["spectrum", "--config", str(cfg)])
    assert exc.value.code == 2
    capsys.readouterr()


def test_config_missing_file(capsys):
    code, _, err = run_cli(capsys, "spectrum", "--config", "/nonexistent/x.cfg")
    assert code == 2
    assert "error:" in err


def test_config_flag_requires_path(capsys):
    code, _, err = run_cli(capsys, "spectrum", "--config")
    assert code == 2
    assert "error:" in err


# ------------------------------------------------------------------ output

def test_output_file_and_quiet_stdout(tmp_path, capsys):
    target = tmp_path / "levels.csv"
    code, out, _ = run_cli(capsys, "spectrum", "--emax", "5", "--output",
                           str(target), "--no-timestamp")
    assert code == 0
    assert out == ""
    text = target.read_text()
    assert text.startswith("# params ")
    assert "\nn,n_theta,m," in text


def test_console_script_round_trip(tmp_path):
    # the installed entry point must behave like the in-process call
    out_a = subprocess.run(
        ["ncosc", "spectrum", "--emax", "6", "--no-timestamp"],
        capture_output=True, text=True, check=True).stdout
    out_b = subprocess.run(
        [sys.executable, "-m", "ncosc.cli", "spectrum", "--emax", "6",
         "--no-timestamp"],
        capture_output=True, text=True, check=True).stdout
    assert out_a == out_b
    assert out_a.splitlines()[-1] == "1,0,1,1,0.5,2,5.5"
