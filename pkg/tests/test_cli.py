import json
import subprocess
import sys

import pytest

from artifact import cli, verify


def call(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ruin_json(capsys):
    code, out, _ = call(capsys, "ruin", "--N", "1", "--a", "-2", "--b", "3", "--format", "json")
    assert code == 0
    assert out.strip() == '{"p_down":"3/5","p_up":"2/5"}'


def test_pmf_zero_steps(capsys):
    code, out, _ = call(capsys, "pmf", "--N", "2", "--c", "1/8", "--n", "0", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["k,numerator,denominator", "0,1,1"]
    code, out, _ = call(capsys, "pmf", "--N", "2", "--c", "1/8", "--n", "0")
    assert json.loads(out) == [{"k": 0, "value": "1/1"}]


def test_pmf_and_cdf_consistent(capsys):
    _, pmf, _ = call(capsys, "pmf", "--N", "1", "--c", "1/4", "--n", "2")
    _, cdf, _ = call(capsys, "cdf", "--N", "1", "--c", "1/4", "--n", "2")
    assert [r["value"] for r in json.loads(pmf)] == ["1/16", "1/4", "3/8", "1/4", "1/16"]
    assert json.loads(cdf)[-1]["value"] == "1/1"


def test_exact_laws(capsys):
    _, out, _ = call(capsys, "exit", "--N", "2", "--a", "-1", "--b", "1")
    assert {r["ell"]: r["value"] for r in json.loads(out)} == {-2: "-1/6", -1: "2/3", 1: "2/3", 2: "-1/6"}
    _, out, _ = call(capsys, "overshoot", "--N", "2", "--b", "2")
    assert {r["ell"]: r["value"] for r in json.loads(out)} == {2: "3/1", 3: "-2/1"}
    _, out, _ = call(capsys, "moments", "--N", "2", "--b", "2", "--n", "2")
    assert json.loads(out)["value"] == "-6/1"
    _, out, _ = call(capsys, "moments", "--N", "1", "--a", "-2", "--b", "3", "--n", "2")
    assert json.loads(out)["value"] == "6/1"


def test_float_commands(capsys):
    code, out, _ = call(capsys, "roots", "--N", "2", "--c", "1/8", "--z", "0.5")
    assert code == 0 and len(json.loads(out)["u"]) == 2
    code, out, _ = call(capsys, "genfun", "--N", "1", "--c", "1/4", "--z", "0.5", "--ell", "0")
    assert code == 0 and abs(json.loads(out)["value"][0] - 2 ** 0.5) < 1e-10
    code, out, _ = call(capsys, "genfun", "--N", "1", "--c", "1/4", "--z", "0.5", "--zeta", "1,0")
    assert code == 0 and abs(json.loads(out)["value"][0] - 2) < 1e-10
    code, out, _ = call(capsys, "exit", "--N", "2", "--c", "1/8", "--a", "-1", "--b", "1", "--z", "0.05",
                        "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "ell,re,im" and len(out.splitlines()) == 5


def test_continuum_commands(capsys):
    code, out, _ = call(capsys, "continuum", "taub", "--N", "1", "--c", "1/4", "--b", "1", "--lambda", "1")
    assert code == 0 and abs(json.loads(out)["value"][0] - 0.1353352832366) < 1e-11
    code, out, _ = call(capsys, "continuum", "xab", "--N", "2", "--a", "-1.5", "--b", "1.5")
    anchors = json.loads(out)["anchors"]
    assert [a["location"] for a in anchors] == [-1.5, 1.5]
    assert abs(anchors[0]["coefficients"][0] - 0.5) < 1e-12
    code, out, _ = call(capsys, "continuum", "potential", "--N", "2", "--c", "1/8", "--lambda", "2", "--x", "0.5")
    assert code == 0


def test_lauricella(capsys):
    code, out, _ = call(capsys, "lauricella", "--N", "1", "--a", "-2", "--b", "4", "--phi", "3,-3")
    obj = json.loads(out)
    assert code == 0 and obj["satisfied"]
    assert [r["value"] for r in obj["values"]] == [f"{1 - x}/1" for x in range(-2, 5)]
    code, out, _ = call(capsys, "lauricella", "--N", "2", "--a", "-2", "--b", "2", "--seed", "3")
    assert code == 0 and json.loads(out)["satisfied"]


@pytest.mark.parametrize("argv", [
    ["pmf", "--N", "2", "--c", "0.125", "--n", "1"],
    ["pmf", "--N", "2", "--c", "0", "--n", "1"],
    ["pmf", "--N", "2", "--n", "1"],
    ["ruin", "--N", "1", "--a", "2", "--b", "3"],
    ["roots", "--N", "2", "--c", "1/8", "--z", "1.5"],
    ["pmf", "--N", "2", "--c", "1/8", "--n", "1", "--precision", "30"],
    ["frobnicate"],
    [],
])
def test_domain_errors_exit_one(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 1
    assert err.startswith("usage:") or err.startswith("error:")


def test_error_names_precondition(capsys):
    _, _, err = call(capsys, "pmf", "--N", "2", "--c", "0.125", "--n", "1")
    assert "rational" in err
    _, _, err = call(capsys, "pmf", "--N", "2", "--n", "1")
    assert "--c" in err


def test_verify_appendix(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "appendix")
    report = json.loads(out)
    assert code == 0 and report and all(r["status"] == "pass" for r in report)


def test_verify_failure_exit_two(capsys, monkeypatch):
    monkeypatch.setattr(verify, "run_suites", lambda *a, **k: [
        {"suite": "walk", "case": "walk/x", "status": "fail", "max_error": 1.0}])
    code, _, err = call(capsys, "verify", "--suite", "walk")
    assert code == 2 and "walk/x" in err


def test_verify_deterministic(capsys):
    outs = [call(capsys, "verify", "--suite", "exit", "--seed", "5")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_output_file(tmp_path, capsys):
    path = tmp_path / "ruin.csv"
    code, out, _ = call(capsys, "ruin", "--N", "2", "--a", "-1", "--b", "1", "--format", "csv", "--output", str(path))
    assert code == 0 and out == ""
    assert path.read_text().splitlines() == ["name,numerator,denominator", "p_down,1,2", "p_up,1,2"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "artifact", "ruin", "--N", "1", "--a", "-2", "--b", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout) == {"p_down": "3/5", "p_up": "2/5"}
