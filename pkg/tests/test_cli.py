import json
import pathlib
import subprocess
import sys

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from freecurves import cli, pencil
from freecurves.derivations import FreenessVerdict

SCHEMA = pathlib.Path(__file__).resolve().parents[1] / "schema"
REPORT_SCHEMA = json.loads((SCHEMA / "report.v1.json").read_text())
CERT_SCHEMA = json.loads((SCHEMA / "certificate.v1.json").read_text())
PROFILE_SCHEMA = json.loads((SCHEMA / "profile.v1.json").read_text())
CEVA = "x*y*z*(x-y)*(x-z)*(y-z)"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out if code == 0 else out.err


def run_json(capsys, *argv):
    code, text = run(capsys, *argv, "--json")
    report = json.loads(text)
    jsonschema.validate(report, REPORT_SCHEMA)
    return code, report


def test_free_check_ceva(capsys):
    code, rep = run_json(capsys, "free-check", CEVA)
    assert code == 0
    v = rep["result"]["verdict"]
    assert v["status"] == "free" and v["exponents"] == [2, 3]
    jsonschema.validate(v["certificate"], CERT_SCHEMA)


def test_not_free_still_exits_zero(capsys):
    code, rep = run_json(capsys, "free-check", "x^2+y^2+z^2")
    assert code == 0 and rep["result"]["verdict"]["status"] == "not-free"


def test_eigenscheme_power_derivation(capsys):
    code, rep = run_json(capsys, "eigenscheme", "x^3", "y^3", "z^3")
    es = rep["result"]["eigenscheme"]
    assert code == 0 and es["status"] == "finite" and es["length"] == 13
    jsonschema.validate(es["profile"], PROFILE_SCHEMA)


def test_eigenscheme_containment_flag(capsys):
    code, rep = run_json(capsys, "eigenscheme", "x^3", "y^3", "z^3", "--contains",
                         "x*y*z*(x^2-y^2)")
    assert code == 0 and "contained" in rep["result"]["containment"]


def test_tmax_override_is_echoed(capsys):
    code, rep = run_json(capsys, "--tmax", "20", "eigenscheme", "x^2", "y^2", "z^2")
    assert rep["request"]["tmax"] == 20
    assert rep["result"]["eigenscheme"]["profile"]["t_max"] == 20


def test_global_flags_before_subcommand(capsys):
    code, rep = run_json(capsys, "--field", "fp:65537", "free-check", CEVA)
    assert code == 0 and rep["request"]["field"] == "fp:65537"


def test_deterministic_output(capsys):
    a = run(capsys, "free-check", CEVA, "--json")[1]
    b = run(capsys, "free-check", CEVA, "--json")[1]
    assert a == b
    code, rep = run_json(capsys, "free-check", CEVA, "--timing")
    assert "timing_seconds" in rep


def test_text_rendering_comes_from_report(capsys):
    code, text = run(capsys, "free-check", CEVA)
    assert code == 0
    assert "status: free" in text and "exponents:" in text and "2, 3" in text


def test_parse_error_exit_one(capsys):
    code, text = run(capsys, "free-check", "x^2+", "--json")
    rep = json.loads(text)
    assert code == 1 and rep["status"] == "refused"
    assert rep["error"]["position"] == 4 and rep["error"]["expected"]
    jsonschema.validate(rep, REPORT_SCHEMA)


def test_refusal_exit_one(capsys):
    code, text = run(capsys, "free-check", "x^2*y", "--json")
    assert code == 1 and json.loads(text)["error"]["type"] == "NotReduced"
    code, _ = run(capsys, "pencil-free", "x*z", "z^2-x*y", "--members", "1:1", "2:2")
    assert code == 1


def test_pencil_commands(capsys):
    code, rep = run_json(capsys, "pencil-analyze", "x^2+y^2+z^2", "x*y*z")
    an = rep["result"]["analysis"]
    assert code == 0 and an["gamma"]["length"] == 13 and an["singular_params"] == [["1", "-27"]]
    code, rep = run_json(capsys, "pencil-free", "x*z", "z^2-x*y", "--members", "0:1", "1:1", "1:-1")
    th = rep["result"]["theorem"]
    assert code == 0 and th["free_with_exponents"] and th["contains_eigenscheme"]
    code, rep = run_json(capsys, "pencil-free", "x*z", "z^2-x*y", "--members", "0:1", "1:1", "1:-1",
                         "--add", "1:2")
    assert code == 0 and rep["result"]["add_smooth_member"]["exponents"] == [2, 5]


def test_consistency_failure_exit_two(capsys, monkeypatch):
    monkeypatch.setattr(pencil, "decide_freeness",
                        lambda f, **kw: FreenessVerdict("not-free", None, reason="forced"))
    code, text = run(capsys, "pencil-free", "x*z", "z^2-x*y", "--members", "0:1", "1:1", "1:-1", "--json")
    rep = json.loads(text)
    assert code == 2 and rep["status"] == "consistency-failure"


def test_tau_and_mu(capsys):
    code, rep = run_json(capsys, "tau", CEVA)
    tj = rep["result"]["tjurina"]
    assert code == 0 and tj["tjurina_total"] == 19 and tj["agree"]
    code, rep = run_json(capsys, "mu", "(z^2-x*y)*(x*z+z^2-x*y)*(x*z-z^2+x*y)", "--at", "0,1,0")
    loc = rep["result"]["local"]
    assert (loc["mu"], loc["tau"], loc["quasihomogeneous"]) == (16, 15, False)


def test_fixture_commands(capsys):
    code, rep = run_json(capsys, "fixtures", "list")
    assert "ceva" in rep["result"]["fixtures"]
    code, rep = run_json(capsys, "fixtures", "emit", "fermat", "--n", "4")
    assert rep["result"]["fixture"]["params"] == {"n": 4}
    code, rep = run_json(capsys, "fixtures", "run", "ceva")
    assert code == 0 and rep["result"]["ok"]
    code, _ = run(capsys, "fixtures", "emit")
    assert code == 1


@pytest.fixture(scope="module")
def ceva_report(tmp_path_factory):
    out = subprocess.run([sys.executable, "-m", "freecurves.cli", "free-check", CEVA, "--json"],
                         capture_output=True, text=True, check=True)
    path = tmp_path_factory.mktemp("cert") / "ceva.json"
    path.write_text(out.stdout)
    return path, json.loads(out.stdout)


def test_verify_cert_accepts_emitted(capsys, ceva_report):
    path, _ = ceva_report
    code, rep = run_json(capsys, "verify-cert", str(path))
    assert code == 0 and rep["result"]["valid"]


def test_verify_cert_rejects_altered_scalar(capsys, ceva_report, tmp_path):
    _, report = ceva_report
    cert = dict(report["result"]["verdict"]["certificate"])
    cert["c"] = str(int(cert["c"]) + 1)
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(cert))
    code, text = run(capsys, "verify-cert", str(p), "--json")
    rep = json.loads(text)
    assert code == 1 and "c*f" in rep["error"]["message"]


def _tamper_targets(cert):
    targets = [("c", None)]
    targets += [("theta1", i) for i in range(3)] + [("theta2", i) for i in range(3)]
    return targets


@settings(max_examples=60)
@given(st.data())
def test_verify_cert_rejects_single_character_tampering(ceva_report, tmp_path_factory, data):
    _, report = ceva_report
    cert = json.loads(json.dumps(report["result"]["verdict"]["certificate"]))
    key, idx = data.draw(st.sampled_from(_tamper_targets(cert)))
    text = cert[key] if idx is None else cert[key][idx]
    digits = [k for k, ch in enumerate(text) if ch.isdigit()]
    if not digits:
        return
    k = data.draw(st.sampled_from(digits))
    new = data.draw(st.sampled_from([d for d in "0123456789" if d != text[k]]))
    tampered = text[:k] + new + text[k + 1:]
    if idx is None:
        cert[key] = tampered
    else:
        cert[key][idx] = tampered
    p = tmp_path_factory.mktemp("t") / "t.json"
    p.write_text(json.dumps(cert))
    assert cli.main(["verify-cert", str(p), "--json"]) == 1


def test_console_entry_point():
    out = subprocess.run(["freecurves", "eigenscheme", "x^3", "y^3", "z^3", "--json"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["result"]["eigenscheme"]["length"] == 13
