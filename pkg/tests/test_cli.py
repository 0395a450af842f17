from __future__ import annotations

import json

import pytest

from tregular.algebra import builtin
from tregular.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_algebra_flags(capsys):
    code, data = run_json(capsys, "algebra", "--builtin", "quaternion", "--json")
    assert code == 0
    assert data["associative"] and data["dimension"] == 4
    code, data = run_json(capsys, "algebra", "--builtin", "octonion", "--json")
    assert code == 0
    assert not data["associative"] and data["alternative"]


def test_algebra_from_json_file(capsys, tmp_path):
    spec = tmp_path / "c.json"
    spec.write_text(json.dumps(builtin("complex").to_json()))
    code, data = run_json(capsys, "algebra", "--algebra", str(spec), "--json")
    assert code == 0 and data["dimension"] == 2
    bad = builtin("complex").to_json()
    bad["mul"] = bad["mul"][:3]
    spec.write_text(json.dumps(bad))
    code, _, err = run(capsys, "algebra", "--algebra", str(spec))
    assert code == 2 and err


def test_unknown_algebra_is_usage_error(capsys):
    code, _, err = run(capsys, "algebra", "--builtin", "nonsense")
    assert code == 2 and err


def test_tpoly(capsys):
    code, data = run_json(capsys, "tpoly", "--fan", "0,3", "--k", "2", "--json")
    assert code == 0 and data["k"] == [2] and data["fan"] == "(0,3)"
    code, out, _ = run(capsys, "tpoly", "--fan", "0,3", "--k", "2")
    assert code == 0 and out.strip()


def test_tpoly_bad_fan(capsys):
    code, _, err = run(capsys, "tpoly", "--fan", "0,9", "--k", "1")
    assert code == 2 and "fan" in err


def test_fueter(capsys):
    code, data = run_json(capsys, "fueter", "--k", "1,1,0", "--json")
    assert code == 0 and data["dbar_residual_zero"]
    code, _, _ = run(capsys, "fueter", "--k", "1,1")
    assert code == 2


def test_stem(capsys):
    code, data = run_json(capsys, "stem", "--fan", "0,3", "--poly", "1", "--json")
    assert code == 0
    assert set(data["stem"]["components"]) <= {"{}", "{1}"}
    code, _, _ = run(capsys, "stem", "--fan", "1,3", "--poly", "0,1", "--at", "I=1:3/5,4/5")
    assert code == 0
    code, _, _ = run(capsys, "stem", "--fan", "1,3", "--poly", "0,1", "--at", "I=1:1,1")
    assert code == 2


def test_classify(capsys):
    code, data = run_json(capsys, "classify", "--n", "3", "--json")
    assert code == 0 and data["n"] == 3 and len(data["classes"]) == 4


def test_verify_report_shape(capsys):
    code, data = run_json(capsys, "verify", "maxmod", "--samples", "2000")
    assert code == 0
    assert data["suite"] == "maxmod"
    assert data["config"]["seed"] == 42 and data["config"]["samples"] == 2000
    case = data["cases"][0]
    assert set(case) >= {"name", "status", "detail"}
    assert case["status"] == "pass"


def test_verify_failure_exit_code(capsys):
    code, data = run_json(capsys, "verify", "cauchy", "--samples", "5000", "--tolerance-sigma", "0")
    assert code == 1
    assert any(c["status"] == "fail" for c in data["cases"])


def test_verify_small_quadrature(capsys):
    code, data = run_json(capsys, "verify", "quadrature", "--samples", "1000")
    assert code in (0, 1)
    assert data["cases"]


def test_verify_classify_skip(capsys):
    code, data = run_json(capsys, "verify", "classify", "--n", "4")
    assert code == 0
    assert {c["status"] for c in data["cases"]} == {"skip"}


def test_verify_deterministic(capsys):
    _, first, _ = run(capsys, "verify", "symbolic", "--seed", "3")
    _, second, _ = run(capsys, "verify", "symbolic", "--seed", "3")
    assert first == second


def test_argparse_rejects_unknown_suite():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nope"])
    assert exc.value.code == 2
