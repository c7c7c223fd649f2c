"""INI parsing, report emission, CSV formats, exit codes."""

import json
import math

import pytest

from bubblecollapse import IntegratorSettings, ValidationError, integrate, validate
from bubblecollapse.cli import (EXIT_COLLAPSE, EXIT_INTEGRATION, EXIT_INVALID,
                                EXIT_IO, EXIT_NO_COLLAPSE, build_report,
                                emit_trajectory, load_config, main)
from conftest import REFERENCE_INI, make_reference_config


def write_ini(tmp_path, text, name="scenario.ini"):
    path = tmp_path / name
    path.write_text(text)
    return path


def errors_of(tmp_path, text):
    with pytest.raises(ValidationError) as exc_info:
        load_config(write_ini(tmp_path, text))
    return exc_info.value.errors


# --- config parsing -----------------------------------------------------------

def test_reference_ini_parses_to_the_reference_config(reference_ini):
    assert load_config(reference_ini) == make_reference_config()


def test_integrator_and_gas_extras_are_parsed(tmp_path):
    text = REFERENCE_INI.replace(
        "[geometry]",
        "R_univ = 8e7\n\n[integrator]\nrel_tol = 1e-8\nabs_tol = 1e-13, 1e-10\n"
        "max_step = 1e-4\ncollapse_epsilon = 1e-4\nmax_time = 0.5\n"
        "singularity_floor = 1e-11\ngrowth_cap = 50\n\n[geometry]")
    config = load_config(write_ini(tmp_path, text))
    assert config.gas.R_univ == 8e7
    assert config.integrator == IntegratorSettings(
        rel_tol=1e-8, abs_tol=(1e-13, 1e-10), max_step=1e-4,
        collapse_epsilon=1e-4, max_time=0.5, singularity_floor=1e-11,
        growth_cap=50.0)


def test_abs_tol_accepts_space_separated_pair(tmp_path):
    text = REFERENCE_INI.replace(
        "[geometry]", "[integrator]\nabs_tol = 1e-13 1e-10\n\n[geometry]")
    assert load_config(write_ini(tmp_path, text)).integrator.abs_tol \
        == (1e-13, 1e-10)


def test_abs_tol_must_be_a_pair(tmp_path):
    text = REFERENCE_INI.replace(
        "[geometry]", "[integrator]\nabs_tol = 1e-13\n\n[geometry]")
    errs = errors_of(tmp_path, text)
    assert any("abs_tol" in e and "two numbers" in e for e in errs)


def test_unknown_key_and_section_are_rejected(tmp_path):
    text = REFERENCE_INI.replace("rho = 8.2", "rho = 8.2\nsigma = 30") \
        + "\n[magnet]\nfield = 2\n"
    errs = errors_of(tmp_path, text)
    assert any("unknown key 'sigma' in [fluid]" in e for e in errs)
    assert any("unknown section [magnet]" in e for e in errs)


def test_missing_key_is_rejected(tmp_path):
    errs = errors_of(tmp_path, REFERENCE_INI.replace("mu = 0.0287\n", ""))
    assert any("missing key 'mu' in [fluid]" in e for e in errs)


def test_default_section_is_rejected(tmp_path):
    errs = errors_of(tmp_path, "[DEFAULT]\nrho = 1\n" + REFERENCE_INI)
    assert any("unknown section [DEFAULT]" in e for e in errs)


def test_non_numeric_value_is_rejected(tmp_path):
    errs = errors_of(tmp_path, REFERENCE_INI.replace("rho = 8.2", "rho = oily"))
    assert any("[fluid] rho = 'oily': not a number" in e for e in errs)


def test_rpm_defaults_to_2000(tmp_path):
    text = REFERENCE_INI.replace("\n[pump]\nrpm = 2000\n", "")
    assert load_config(write_ini(tmp_path, text)).pump_rpm == 2000.0


# --- run subcommand -----------------------------------------------------------

def test_run_writes_all_four_outputs(reference_ini, tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["run", "--config", str(reference_ini), "--out", str(out)])
    assert code == EXIT_COLLAPSE
    for name in ("report.json", "report.txt", "trajectory.csv", "comparison.csv"):
        assert (out / name).is_file()
    stdout = capsys.readouterr().out
    assert "bubble collapse report" in stdout
    assert "termination           : collapsed" in stdout

    report = json.loads((out / "report.json").read_text())
    assert report["termination"] == "collapsed"
    assert report["a"] == {"value": 1e7, "provenance": "overridden",
                           "computed_value": pytest.approx(-5.3397859855022274e7,
                                                           rel=1e-12)}
    assert report["t_c"]["numerical_s"] == pytest.approx(1.4109950329659385e-3,
                                                         rel=1e-9)
    assert report["t_c"]["analytic_s"] == pytest.approx(1.2806248474865696e-3,
                                                        rel=1e-12)
    assert report["t_c"]["abs_difference_s"] == pytest.approx(
        abs(report["t_c"]["numerical_s"] - report["t_c"]["analytic_s"]), rel=1e-12)
    assert report["pump"]["rpm"] == 2000.0
    assert 16.5 <= report["pump"]["rotation_angle_deg"] <= 17.2
    assert report["pump"]["max_safe_rpm"] == pytest.approx(
        17.0 / (6.0 * report["t_c"]["numerical_s"]), rel=1e-12)
    assert report["event"]["used_linear_fallback"] is False
    assert 0.0 < report["event"]["extrapolation_dt_s"] < 1e-6
    assert any("a_override" in note and "-5.339786e+07" in note
               for note in report["notes"])


def test_run_report_json_round_trips_the_dict(reference_ini, tmp_path, capsys):
    out = tmp_path / "out"
    main(["run", "--config", str(reference_ini), "--out", str(out)])
    scenario = validate(load_config(reference_ini))
    report = build_report(scenario, integrate(scenario), 17.0)
    assert json.loads((out / "report.json").read_text()) == report


def test_run_outputs_are_deterministic(reference_ini, tmp_path, capsys):
    out1, out2 = tmp_path / "one", tmp_path / "two"
    main(["run", "--config", str(reference_ini), "--out", str(out1)])
    main(["run", "--config", str(reference_ini), "--out", str(out2)])
    for name in ("report.json", "report.txt", "trajectory.csv", "comparison.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_run_without_collapse_exits_2_and_skips_the_tables(tmp_path, capsys):
    ini = write_ini(tmp_path, REFERENCE_INI.replace("a_override = 1e7\n", ""))
    out = tmp_path / "out"
    code = main(["run", "--config", str(ini), "--out", str(out)])
    assert code == EXIT_NO_COLLAPSE
    assert (out / "report.json").is_file() and (out / "report.txt").is_file()
    assert not (out / "trajectory.csv").exists()
    assert not (out / "comparison.csv").exists()
    report = json.loads((out / "report.json").read_text())
    assert report["termination"] == "max_time"
    assert report["t_c"]["numerical_s"] is None
    assert report["a"]["provenance"] == "computed"
    assert report["a"]["value"] == pytest.approx(-5.3397859855022274e7, rel=1e-12)
    assert any("cannot drive a collapse" in note and "-5.339786e+07" in note
               for note in report["notes"])


def test_run_singularity_exits_4(tmp_path, capsys):
    text = """\
[fluid]
rho = 0.5
mu = 100
p_m = 1e7

[gas]
rho_gas = 0.01177
W = 28.97
T = 300
a_override = 1e8

[geometry]
R0 = 0.01

[integrator]
collapse_epsilon = 1e-7
"""
    ini = write_ini(tmp_path, text)
    out = tmp_path / "out"
    code = main(["run", "--config", str(ini), "--out", str(out)])
    assert code == EXIT_INTEGRATION
    report = json.loads((out / "report.json").read_text())
    assert report["termination"] == "singularity"
    assert not (out / "trajectory.csv").exists()


def test_run_missing_config_exits_5_without_outputs(tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["run", "--config", str(tmp_path / "nope.ini"),
                 "--out", str(out)])
    assert code == EXIT_IO
    assert not out.exists()


def test_run_invalid_config_exits_3_without_outputs(tmp_path, capsys):
    ini = write_ini(tmp_path, REFERENCE_INI.replace("rho = 8.2", "rho = 0"))
    out = tmp_path / "out"
    code = main(["run", "--config", str(ini), "--out", str(out)])
    assert code == EXIT_INVALID
    assert not out.exists()
    assert "fluid.rho" in capsys.readouterr().err


# --- emitted tables -----------------------------------------------------------

def test_trajectory_csv_format(reference_ini, tmp_path, capsys):
    out = tmp_path / "out"
    main(["run", "--config", str(reference_ini), "--out", str(out)])
    raw = (out / "trajectory.csv").read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "t_s,R_numerical_cm,Rdot_cm_s,R_closed_form_cm,R_taylor2_cm"
    assert len(lines) == 501                      # header + 500 samples
    cells = [[float(c) for c in line.split(",")] for line in lines[1:]]
    assert all(len(row) == 5 for row in cells)
    t0 = cells[0]
    assert t0[0] == 0.0 and t0[2] == 0.0
    assert t0[1] == t0[3] == t0[4] == 0.05
    last = cells[-1]
    assert 0.0 <= last[1] <= 1e-9                 # the grid ends at R = 0
    ts = [row[0] for row in cells]
    assert ts == sorted(ts)
    report = json.loads((out / "report.json").read_text())
    assert math.isclose(ts[-1], report["t_c"]["numerical_s"], rel_tol=1e-9)
    for line in lines[1:]:
        for cell in line.split(","):
            # %.9e layout: 9 fractional digits before the exponent
            assert "e" in cell and len(cell.split("e")[0].lstrip("-")) == 11


def test_trajectory_sample_count_is_adjustable(reference_ini, tmp_path, capsys):
    out = tmp_path / "out"
    main(["run", "--config", str(reference_ini), "--out", str(out),
          "--samples", "50"])
    assert len((out / "trajectory.csv").read_text().splitlines()) == 51


def test_comparison_csv_contents(reference_ini, tmp_path, capsys):
    out = tmp_path / "out"
    main(["run", "--config", str(reference_ini), "--out", str(out)])
    lines = (out / "comparison.csv").read_text().splitlines()
    assert lines[0] == "quantity,numerical,analytic,abs_difference"
    assert [line.split(",")[0] for line in lines[1:]] \
        == ["t_c_s", "rotation_angle_deg", "max_safe_rpm"]
    for line in lines[1:]:
        _, num, ana, diff = line.split(",")
        assert math.isclose(abs(float(num) - float(ana)), float(diff),
                            rel_tol=1e-5, abs_tol=1e-12)


def test_trajectory_table_requires_a_collapse(computed_a_config, tmp_path):
    scenario = validate(computed_a_config)
    result = integrate(scenario)
    with pytest.raises(ValueError):
        emit_trajectory(result, scenario, tmp_path / "t.csv")


# --- sweep and check subcommands ----------------------------------------------

def test_sweep_subcommand(reference_ini, tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["sweep", "--config", str(reference_ini), "--out", str(out),
                 "--parameter", "rho", "--values", "4.1,8.2,16.4"])
    assert code == 0
    lines = (out / "sweep.csv").read_text().splitlines()
    assert lines[0] == "rho,a,t_c_numerical_s,t_c_analytic_s,collapsed"
    assert len(lines) == 4 and all(line.endswith(",true") for line in lines[1:])
    payload = json.loads((out / "sweep.json").read_text())
    assert payload["parameter"] == "rho"
    assert payload["monotonicity_numerical"] == "increasing"
    assert payload["monotonicity_analytic"] == "increasing"
    assert len(payload["points"]) == 3
    stdout = capsys.readouterr().out
    assert "swept rho over 3 points (3 collapsed)" in stdout


def test_sweep_subcommand_rejects_a_bad_grid(reference_ini, tmp_path, capsys):
    code = main(["sweep", "--config", str(reference_ini),
                 "--out", str(tmp_path / "out"),
                 "--parameter", "rho", "--values", "1,1"])
    assert code == EXIT_INVALID
    assert "monotone" in capsys.readouterr().err


def test_check_subcommand(reference_ini, capsys):
    assert main(["check", "--config", str(reference_ini)]) == 0
    stdout = capsys.readouterr().out
    assert "a = 1.000000000e+07" in stdout and "(overridden)" in stdout
    assert "warning" not in stdout


def test_check_subcommand_warns_when_a_is_negative(tmp_path, capsys):
    ini = write_ini(tmp_path, REFERENCE_INI.replace("a_override = 1e7\n", ""))
    assert main(["check", "--config", str(ini)]) == 0
    stdout = capsys.readouterr().out
    assert "(computed)" in stdout
    assert "warning: a <= 0" in stdout


def test_main_requires_a_subcommand():
    with pytest.raises(SystemExit):
        main([])
