import json

import pytest

from ffbc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_places_count(capsys):
    code, out, _ = run(capsys, "places", "count", "--q", "2", "--deg", "3")
    assert code == 0 and json.loads(out) == {"1": 3, "2": 1, "3": 2}


def test_state_eval_gibbs(capsys):
    code, out, _ = run(capsys, "state", "eval", "--state", "gibbs", "--chi", "chi(1;T)", "--expr", "e(1/T)",
                       "--beta", "2", "--q", "2")
    data = json.loads(out)
    assert code == 0
    assert data["exact"] == "2u-1" and data["numeric"] == pytest.approx(-0.5, abs=1e-12)
    assert data["exact_parts"] == {"num": "2u-1", "den": ["1"]}
    assert data["truncation_report"]["agree_through_D"] is True


def test_state_eval_phi_beta_formal(capsys):
    code, out, _ = run(capsys, "state", "eval", "--expr", "mu(T)*mu*(T)", "--formal")
    assert code == 0 and json.loads(out)["exact"] == "u"


def test_verify_relations(capsys):
    code, out, _ = run(capsys, "verify", "relations", "--q", "2", "--maxdeg", "2")
    data = json.loads(out)
    assert code == 0 and data["status"] == "pass"
    assert [s["name"] for s in data["suites"]] == ["presentation_relations"]
    assert data["schema_version"] == "1.0" and data["suites"][0]["anchor"]


def test_verify_perturbation_is_caught(capsys):
    code, out, _ = run(capsys, "verify", "relations", "--perturb", "f-relation")
    data = json.loads(out)
    assert code == 1 and data["status"] == "fail"
    assert data["suites"][0]["witness"]["relation"] == "f"


def test_verify_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["verify", "characters", "relations", "--quick", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_csv_output(capsys):
    code, out, _ = run(capsys, "verify", "weil", "partition", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "name,status,cases,anchor" and len(lines) == 3
    code, out, _ = run(capsys, "algebra", "rep", "--expr", "mu(T)", "--chi", "chi(1;T)", "-D", "2", "--format", "csv")
    assert out.splitlines()[0] == "row,col,real,imag"


def test_other_subcommands(capsys):
    code, out, _ = run(capsys, "zeta", "partial", "--q", "2", "--level", "T", "--residue", "1")
    assert code == 0 and json.loads(out)["rational"] == {"num_coeffs": ["1", "-1"], "den_coeffs": ["1", "-2"]}
    code, out, _ = run(capsys, "zeta", "eval", "--q", "3", "--beta", "2", "-D", "8")
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = run(capsys, "carlitz", "phi", "--poly", "T^2")
    assert json.loads(out)["coefficients"] == ["T^2", "T^2+T", "1"]
    code, out, _ = run(capsys, "char", "admissible", "--chi", "chi(T; T^2)")
    assert json.loads(out)["admissible"] is False
    code, out, _ = run(capsys, "algebra", "mul", "--expr", "mu(T)*mu*(T+1)", "--expr", "mu(T+1)*e(1/T)*mu*(T)")
    assert json.loads(out)["canonical"] == "(1/2)*e(1/T^2) + (1/2)*e((T+1)/T^2)"
    code, out, _ = run(capsys, "places", "frobenius", "--q", "3", "--level", "T", "--deg", "2")
    assert "no density statement" in json.loads(out)["status"]
    code, out, _ = run(capsys, "char", "eval", "--q", "4", "--modulus", "x^2+x+1", "--chi", "chi(1; T)",
                       "--point", "[x]/T")
    assert code == 0 and json.loads(out)["exponent"] in (0, 1)


def test_usage_errors(capsys):
    code, _, err = run(capsys, "algebra", "parse", "--expr", "mu(T)*e(1/T")
    assert code == 2 and json.loads(err)["position"] == 8
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "places", "count", "--bogus-flag")[0] == 2
    assert run(capsys, "places", "count")[0] == 2  # missing --deg
    assert run(capsys, "state", "eval", "--expr", "e(0)")[0] == 2  # neither --beta nor --formal
    assert run(capsys, "verify", "nonsense")[0] == 2
    code, _, err = run(capsys, "places", "count", "--q", "4", "--modulus", "x^2+1", "--deg", "1")
    assert code == 2 and "irreducible" in err
    code, _, err = run(capsys, "state", "eval", "--expr", "e(0)", "--beta", "0.5")
    assert code == 2 and "DivergentSeries" in err
