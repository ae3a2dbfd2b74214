import csv
import io
import json
import math
import subprocess
import sys

import pytest

from qsl2r.cli import main, parse_a, resolve_algebra, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


@pytest.mark.parametrize("name,a", [("O_q(SU(2))", "1"), ("Podles", "3/10"), ("Podleś", "3/10"), ("Uq_pm", "1")])
def test_verify_algebra_passes(capsys, name, a):
    code, data, _ = run_json(capsys, "verify-algebra", name, "--q", "0.5", "--a", a, "--samples", "40")
    assert code == 0 and data["schema"] == 1 and data["passed"]
    assert all(c["passed"] for c in data["checks"])


def test_malformed_algebra_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify-algebra", "SU(3)"])
    assert exc.value.code == 2
    assert "unknown algebra" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["irrep"], ["bogus"], ["irrep", "T+", "--q", "x"], ["regular", "--sweep", "1-3"],
                                  ["irrep", "T+", "--format", "xml"]])
def test_bad_arguments_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [["irrep", "T+", "--q", "1.5"], ["irrep", "T+", "--trunc", "1"],
                                  ["irrep", "T+", "--tol", "0"]])
def test_bad_config_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_irrep_t_plus(capsys):
    code, data, _ = run_json(capsys, "irrep", "T+", "--q", "0.5")
    assert code == 0
    assert math.isclose(data["casimir"], 0.5 + 2.0)


def test_irrep_l_plus_zero(capsys):
    code, data, _ = run_json(capsys, "irrep", "L+:0.0", "--tol", "1e-10")
    assert code == 0 and data["passed"]
    assert abs(data["casimir_interior"]) < 1e-10
    assert max(data["residuals"].values()) < 1e-10
    z = data["representation"]["matrices"]["Z"]
    assert len(z) == len(z[0]) == 81


def test_irrep_outside_window(capsys):
    code, out, err = run(capsys, "irrep", "L+:99")
    assert code == 1 and out == ""
    assert "window" in err


def test_irrep_csv(capsys):
    code, out, _ = run(capsys, "irrep", "D+:2", "--trunc", "5", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["generator", "row", "col", "re", "im"]
    assert {r[0] for r in rows[1:]} == {"X", "Y", "Z", "iB"}


def test_branch_d_plus_3(capsys):
    code, data, _ = run_json(capsys, "branch", "D+3")
    assert code == 0 and data["components"] == {"pi-": 1}


def test_induce_quarter_turn(capsys):
    code, data, _ = run_json(capsys, "induce", "--theta", str(math.pi / 2))
    assert code == 0 and math.isclose(data["casimir_interior"], 2.0, abs_tol=1e-10)
    # Casimir 2 sits on the edge of the odd window: that block is the mock pair
    assert data["components"] == ["L+:2", "D+:1", "D-:1"]


def test_measure_single_atom(capsys):
    code, data, _ = run_json(capsys, "measure", "--sign", "+", "--n", "-3", "--q", "0.5")
    assert code == 0 and data["schema"] == 1
    assert [round(at["loc"], 10) for at in data["atoms"]] == [4.25]


def test_measure_density_csv(capsys, tmp_path):
    out = tmp_path / "g.csv"
    code, stdout, _ = run(capsys, "measure", "--sign", "-", "--n", "4", "--format", "csv", "--samples", "9",
                          "--out", str(out))
    rows = list(csv.reader(out.open()))
    assert code == 0 and stdout == ""
    assert rows[0] == ["lambda", "g"] and len(rows) == 10


def test_regular_sweep_parallel(capsys):
    code, data, _ = run_json(capsys, "regular", "--sweep=-2..2", "--workers", "2")
    assert code == 0 and data["passed"]
    assert [(c["n"], c["sign"]) for c in data["channels"]][:2] == [(-2, "+"), (-2, "-")]
    assert len(data["channels"]) == 10


def test_regular_single(capsys):
    code, data, _ = run_json(capsys, "regular", "--n", "-3", "--sign", "+")
    assert code == 0
    assert [o["label"] for o in data["channels"][0]["outliers"]] == ["D-:3"]


def test_helpers():
    assert parse_a("3/10").denominator == 10
    assert parse_a("0.25") == 0.25
    assert resolve_algebra("U_q(su(2))") == "Uq_su2"
    with pytest.raises(UsageError):
        resolve_algebra("nope")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qsl2r", "irrep", "T+"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["schema"] == 1
