import csv
import io
import json
import subprocess
import sys

import pytest

from padicdist.cli import RunConfig, UsageError, parse_config, run


def out_of(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr()


def test_interp_verify_example(capsys):
    code, cap = out_of(capsys, ["interp-verify", "--p", "5", "--n", "1", "--chi", "2", "--psi", "1", "--t", "0"])
    assert code == 0
    doc = json.loads(cap.out)
    assert doc["schema_version"] == 1
    assert doc["passed"] and doc["result"]["digits"] >= 10


def test_integrate_example(capsys):
    code, cap = out_of(capsys, ["integrate", "--p", "5", "--depth", "3", "--dist", "haar",
                                "--f", "x^2", "--expect", "1/6"])
    assert code == 0
    res = json.loads(cap.out)["result"]
    assert res["expect"]["residual"]["size"] <= 5.0**-2
    assert res["cauchy_defect"] is not None


def test_integrate_wrong_expectation_fails(capsys):
    code, _ = out_of(capsys, ["integrate", "--p", "5", "--depth", "3", "--f", "x^2", "--expect", "1/7"])
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["check-dist", "--bogus"],
    ["no-such-command"],
    ["check-dist", "--p", "4"],
    ["check-dist", "--p", "17"],
    ["check-dist", "--depth", "4"],
    ["check-dist", "--prec", "8"],
    ["check-dist", "--dist", "nonsense"],
    ["coherence", "--seq", "bad"],
])
def test_usage_errors(capsys, argv):
    code, cap = out_of(capsys, argv)
    assert code == 2
    assert cap.err


def test_fault_exit_code(capsys, tmp_path):
    from padicdist.volkenborn import haar
    mu = haar(3, 2)
    bad = mu.with_value(2, 1, mu(1, 2) + 1)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad.to_json()))
    code, _ = out_of(capsys, ["check-dist", "--p", "3", "--dist", f"json:{path}"])
    assert code == 1
    path.write_text(json.dumps(mu.to_json()))
    code, _ = out_of(capsys, ["check-dist", "--p", "3", "--dist", f"json:{path}"])
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["check-dist", "--dist", "lambda:one-minus-zeta", "--p", "3"],
    ["check-dist", "--dist", "lambda-chi:cyclo-unit:c=1", "--p", "5", "--chi", "2", "--depth", "1"],
    ["check-dist", "--dist", "group-ring:1,2,3", "--p", "3"],
    ["check-dist", "--dist", "dirac:4", "--p", "3"],
    ["defect", "--dist", "haar", "--p", "3"],
    ["mahler", "--f", "binomial(x, 3)", "--m", "5"],
    ["fourier", "--dist", "dirac:2", "--p", "3", "--m", "10"],
    ["transform-verify", "--p", "3", "--dist", "haar", "--measure", "group-ring:1,0,2,1,1,0,0,3,1"],
    ["coherence", "--seq", "cyclo-unit:c=2", "--p", "7"],
    ["gauss", "--p", "5", "--n", "1", "--chi", "1", "--psi", "2"],
    ["lp1", "--p", "5", "--n", "0", "--chi", "2"],
    ["lp1", "--p", "5", "--n", "1", "--chi", "1", "--psi", "1"],
    ["unit-ratio", "--p", "5", "--n", "1", "--chi", "2"],
    ["annihilator", "--p", "5", "--n", "1", "--chi", "2"],
    ["regulator", "--p", "5", "--n", "1", "--chi", "2"],
])
def test_commands_pass(capsys, argv):
    code, cap = out_of(capsys, argv)
    assert code == 0, cap.err
    assert json.loads(cap.out)["passed"] is True


def test_lp1_reports_oracle(capsys):
    _, cap = out_of(capsys, ["lp1", "--p", "5", "--n", "0", "--chi", "2"])
    assert json.loads(cap.out)["result"]["class_number_oracle"]["matching_signs"] == [1]


def test_mahler_values(capsys):
    _, cap = out_of(capsys, ["mahler", "--f", "x^2", "--m", "4", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(cap.out)))
    assert rows[0] == ["key", "value"]
    assert rows[1][0] == "coefficients"
    assert json.loads(rows[1][1]) == ["0", "1", "2", "0", "0"]


def test_unit_ratio_csv_columns(capsys):
    _, cap = out_of(capsys, ["unit-ratio", "--p", "5", "--n", "1", "--chi", "2", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(cap.out)))
    assert rows[0] == ["p", "n", "chi_exp", "psi_exp", "c", "ratio_valuation"]
    assert len(rows) == 13


def test_interp_csv_columns(capsys):
    _, cap = out_of(capsys, ["interp-verify", "--psi", "2", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(cap.out)))
    assert rows[0][-1] == "residual_valuation"


def test_text_format(capsys):
    _, cap = out_of(capsys, ["coherence", "--p", "3", "--format", "text"])
    assert cap.out.startswith("coherence: PASS")


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# desk run\np = 3\ndepth = 3\nf = x^2\nexpect = 1/6\n", encoding="utf-8")
    c = parse_config(["integrate", "--config", str(cfg)])
    assert (c.p, c.depth, c.f, c.expect) == (3, 3, "x^2", "1/6")
    c = parse_config(["integrate", "--config", str(cfg), "--p", "5"])
    assert (c.p, c.depth) == (5, 3)


def test_bad_config_key(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour = blue\n", encoding="utf-8")
    code, _ = out_of(capsys, ["check-dist", "--config", str(cfg)])
    assert code == 2


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, cap = out_of(capsys, ["coherence", "--p", "3", "--out", str(path)])
    assert code == 0 and cap.out == ""
    assert json.loads(path.read_text())["command"] == "coherence"


def test_determinism(tmp_path):
    argv = ["annihilator", "--p", "5", "--n", "1", "--chi", "2"]
    outs = []
    path = tmp_path / "report.json"
    for _ in range(2):
        subprocess.run([sys.executable, "-m", "padicdist", *argv, "--out", str(path)], check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_validate_rejects_directly():
    with pytest.raises(UsageError):
        RunConfig("check-dist", p=9).validate()
    assert RunConfig("check-dist", p=13).validate().p == 13
