import io
import json
import subprocess
import sys
from pathlib import Path

import pandas as pd
import pytest

import TFI
from output.tables import NEUTRAL_K

ROOT = Path(__file__).resolve().parent.parent


def run(capsys, config_file, *args):
    code = TFI.main(["--config", config_file, *args])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_help_in_subprocess():
    cp = subprocess.run([sys.executable, "TFI.py", "--help"], cwd=ROOT, capture_output=True, text=True)
    assert cp.returncode == 0, cp.stderr
    assert "Thomas-Fermi ion" in cp.stdout


def test_version(capsys, config_file):
    code, out, _ = run(capsys, config_file, "version")
    assert code == TFI.EXIT_OK
    assert out.startswith(f"TFI {TFI.VERSION_INFO} (reference data ")


def test_config_file_is_created_with_defaults(capsys, config_file):
    code, out, _ = run(capsys, config_file, "config")
    assert code == TFI.EXIT_OK
    assert json.loads(out) == TFI.DEFAULT_CONFIG
    assert json.loads(Path(config_file).read_text()) == TFI.DEFAULT_CONFIG


def test_config_set_persists(capsys, config_file):
    assert run(capsys, config_file, "config", "--set", "format", "json")[0] == TFI.EXIT_OK
    assert run(capsys, config_file, "config", "--set", "x_max", "150")[0] == TFI.EXIT_OK
    _, out, _ = run(capsys, config_file, "config")
    settings = json.loads(out)
    assert settings["format"] == "json"
    assert settings["x_max"] == 150


def test_command_line_overrides_config(capsys, config_file):
    run(capsys, config_file, "config", "--set", "order", "3")
    _, out, _ = run(capsys, config_file, "--order", "5", "--grid", "2001", "config")
    settings = json.loads(out)
    assert settings["order"] == 5
    assert settings["grid"] == 2001


def test_table_one(capsys, config_file):
    code, out, _ = run(capsys, config_file, "tables", "1")
    assert code == TFI.EXIT_OK
    frame = pd.read_csv(io.StringIO(out)).set_index("row")
    assert list(frame.columns) == ["aX", "(aX)^-1", "(b/a)^2", "b/a", "B/a", "N"]
    assert frame.loc["f_1", "aX"] == pytest.approx(0.490873, abs=5e-6)


def test_table_json_meta(capsys, config_file):
    code, out, _ = run(capsys, config_file, "tables", "2", "--format", "json")
    assert code == TFI.EXIT_OK
    document = json.loads(out)
    meta = document["meta"]
    assert meta["command"] == "tables 2"
    assert meta["order"] == 6 and meta["grid"] == 20001 and meta["n_order"] == 5
    assert meta["K"] == TFI.DEFAULT_CONFIG["neutral_K"] == NEUTRAL_K
    assert {"version", "git", "tol", "rtol", "atol"} <= set(meta)
    last = document["rows"][-1]
    assert last["row"] == "S_6"
    assert last["N"] == pytest.approx(0.293002, abs=1e-5)


def test_output_is_deterministic(capsys, config_file):
    first = run(capsys, config_file, "tables", "3")[1]
    second = run(capsys, config_file, "tables", "3")[1]
    assert first == second
    assert "\r" not in first


def test_unknown_table(capsys, config_file):
    code, out, err = run(capsys, config_file, "tables", "9")
    assert code == TFI.EXIT_USAGE
    assert out == ""
    assert "9" in err


def test_eval_partially_ionized(capsys, config_file):
    code, out, _ = run(capsys, config_file, "eval", "--N", "0.5")
    assert code == TFI.EXIT_OK
    header, row = out.strip().split("\n")
    assert header == "N,X,b,B,a,K"
    values = dict(zip(header.split(","), map(float, row.split(","))))
    assert values["N"] == 0.5
    assert values["b"] * values["X"] == pytest.approx(0.5, rel=1e-9)


def test_eval_neutral_atom(capsys, config_file):
    code, out, _ = run(capsys, config_file, "eval", "--N", "1", "--order", "5", "--format", "json")
    assert code == TFI.EXIT_OK
    document = json.loads(out)
    row = document["rows"][0]
    assert row["X"] is None
    assert row["b"] == 0.0
    assert row["a"] == pytest.approx(1.588434, abs=1e-5)
    assert document["meta"]["method"] == "improved"
    assert document["meta"]["n_order"] == 5


def test_eval_taylor(capsys, config_file):
    _, out, _ = run(capsys, config_file, "eval", "--N", "1", "--method", "taylor", "--format", "json")
    assert json.loads(out)["rows"][0]["B"] == pytest.approx(0.680063, abs=1e-4)


def test_eval_physical_units(capsys, config_file):
    code, out, _ = run(capsys, config_file, "eval", "--N", "0.5", "--Z", "26")
    assert code == TFI.EXIT_OK
    frame = pd.read_csv(io.StringIO(out))
    assert list(frame.columns) == ["N", "X", "b", "B", "a", "K", "Z", "X_bohr", "b_Ry", "b_eV", "ZB_Ry", "ZB_eV"]
    assert frame.loc[0, "Z"] == 26
    assert frame.loc[0, "b_eV"] == pytest.approx(frame.loc[0, "b_Ry"] * 13.605693, rel=1e-6)


@pytest.mark.parametrize("args", [["eval", "--N", "1.5"], ["eval", "--N", "0"], ["eval", "--N", "0.5", "--Z", "0"],
                                  ["eval", "--N", "0.5", "--order", "9"], ["eval"]])
def test_eval_usage_errors(capsys, config_file, args):
    assert run(capsys, config_file, *args)[0] == TFI.EXIT_USAGE


def test_plotdata(capsys, config_file):
    code, out, _ = run(capsys, config_file, "plotdata", "9", "--samples", "10")
    assert code == TFI.EXIT_OK
    frame = pd.read_csv(io.StringIO(out))
    assert list(frame.columns) == ["N"] + [f"order_{k}" for k in range(6)]
    assert len(frame) == 10
    assert (frame.iloc[-1, 1:] == 0.0).all()


def test_plotdata_radius_is_empty_at_neutral_atom(capsys, config_file):
    _, out, _ = run(capsys, config_file, "plotdata", "8", "--samples", "2")
    assert out.strip().split("\n")[-1] == "1," + "," * 5


@pytest.mark.parametrize("args", [["plotdata", "4"], ["plotdata", "9", "--samples", "0"]])
def test_plotdata_usage_errors(capsys, config_file, args):
    assert run(capsys, config_file, *args)[0] == TFI.EXIT_USAGE


def test_validate_list(capsys, config_file):
    code, out, _ = run(capsys, config_file, "validate", "--list")
    assert code == TFI.EXIT_OK
    names = [line.split(":")[0] for line in out.strip().split("\n")]
    assert names == [check.__name__ for check in TFI.DEFAULT_CHECKS]


def test_validate_selected_checks(capsys, config_file):
    code, out, _ = run(capsys, config_file, "validate", "--check", "n_series_recursions",
                       "--check", "transform_matrix_entries")
    assert code == TFI.EXIT_OK
    assert out.strip().split("\n")[-1] == "2/2 checks passed"


def test_validate_coarse_grid_fails(capsys, config_file):
    code, out, _ = run(capsys, config_file, "--grid", "21", "validate", "--check", "k_coefficient_table")
    assert code == TFI.EXIT_VALIDATION
    assert out.startswith("FAIL k_coefficient_table")
    assert "0/1 checks passed" in out


def test_validate_unknown_check(capsys, config_file):
    assert run(capsys, config_file, "validate", "--check", "nope")[0] == TFI.EXIT_USAGE


def test_validate_numerical_failure(capsys, config_file):
    run(capsys, config_file, "config", "--set", "limit_max_iter", "1")
    code, out, _ = run(capsys, config_file, "validate", "--check", "neutral_limit_constants")
    assert code == TFI.EXIT_NUMERICAL
    assert "ConvergenceError" in out


@pytest.mark.slow
def test_validate_all(capsys, config_file):
    code, out, _ = run(capsys, config_file, "validate")
    assert code == TFI.EXIT_OK, out
    assert out.strip().split("\n")[-1] == f"{len(TFI.DEFAULT_CHECKS)}/{len(TFI.DEFAULT_CHECKS)} checks passed"
