import io
import json

import pytest

from venlab.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_theta_verifies():
    code, out, _ = call("theta", "3")
    assert code == EXIT_OK and "theta[n=3]: verified" in out


def test_check_stable_v():
    code, out, _ = call("check-stable", "--q", "v")
    assert code == EXIT_OK and "stable[v]: verified" in out


def test_bad_flag():
    code, _, err = call("theta", "3", "--bad-flag")
    assert code == EXIT_USAGE and "unrecognized" in err


@pytest.mark.parametrize("argv", [
    ["theta", "0"], ["theta", "abc"], [], ["no-such-verb"],
    ["check-stable"], ["eval", "y", "--at", "y"],
])
def test_usage_errors(argv):
    assert call(*argv)[0] == EXIT_USAGE


def test_parse_error_exit():
    code, _, err = call("print", "y + + z")
    assert code == EXIT_USAGE and "offset 4" in err


def test_failed_check_exit():
    code, out, _ = call("hyperplane", "--q0", "x^-1*v")
    assert code == EXIT_FAILED and "FAIL integral" in out


def test_constant_q_is_error_certificate():
    code, out, _ = call("check-stable", "--q", "1 + v")
    assert code == EXIT_FAILED and "error" in out


def test_eval_and_print():
    code, out, _ = call("eval", "p + v", "--at", "x=1,y=1", "--at", "z=1/2,u=2")
    assert code == EXIT_OK and out.strip() == "5"
    code, out, _ = call("print", "v")
    assert out.strip() == "y^2*u + y*z^2 + x*z"
    code, out, _ = call("print", "v*w", "--presentation")
    assert out.strip() == "z*u"


def test_alpha_runs_both_certificates():
    code, out, _ = call("alpha", "2")
    assert code == EXIT_OK
    assert "alpha_phi[n=2]: verified" in out and "fg_equivalence[n=2]: verified" in out


@pytest.mark.parametrize("argv", [
    ["check-coordinate", "--q1", "0", "--q2", "1"],
    ["check-coordinate", "--q1", "x*w"],
    ["hyperplane", "--q0", "v^2*w"],
    ["cusp", "--q", "v"],
    ["phi", "2"],
])
def test_verbs_verify(argv):
    assert call(*argv)[0] == EXIT_OK


def test_lemma_ideal():
    code, out, _ = call("lemma-ideal", "y*w + v^2")
    assert code == EXIT_OK and "x | h: True  x^2 | h: True  (YW + V^2) | h: True" in out


def test_json_schema(tmp_path):
    path = tmp_path / "certs.json"
    code, _, _ = call("theta", "2", "--json", str(path))
    assert code == EXIT_OK
    data = json.loads(path.read_text())
    assert isinstance(data, list) and len(data) == 1
    cert = data[0]
    assert set(cert) == {"claim_id", "status", "checks", "terms_truncated", "ms"}
    assert cert["status"] == "verified" and cert["terms_truncated"] is False
    assert all(set(chk) <= {"name", "pass", "witness"} for chk in cert["checks"])
    # theta_2 is not integral; the certificate keeps the polar witness
    witness = [chk for chk in cert["checks"] if chk["name"] == "integral = false"][0]["witness"]
    assert "x^-1" in witness


def test_witness_truncated_at_40_terms():
    from venlab.certificate import Certificate
    from venlab.maps import y
    cert = Certificate("demo")
    big = sum((y ** k for k in range(50)), y - y)
    cert.check_zero("big residual", big)
    data = cert.to_json()
    assert data["terms_truncated"] is True and data["status"] == "failed"
    assert data["checks"][0]["witness"].endswith("(50 terms)")
    assert data["checks"][0]["witness"].count("y^") == 40


def test_certificate_status_rules():
    from venlab.certificate import Certificate, timed
    cert = Certificate("demo")
    assert cert.status == "verified"
    cert.check("a", True)
    assert cert.verified
    cert.check("b", False, "why")
    assert cert.status == "failed" and cert.failed_checks() == ["b"]
    boom = Certificate("boom")
    with timed(boom):
        raise ArithmeticError("bad")
    assert boom.status == "error" and "ArithmeticError" in boom.to_json()["error"]
