import io
import json

import pytest

from ospq.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_normal_form():
    code, text = run("normal-form", "E1*F1")
    assert code == 0
    assert text.strip() == "((-v^2)/(-1 + v^4))*K[-2] + ((v^2)/(-1 + v^4))*K[2] + F1*E1"


def test_psi_membership():
    code, text = run("psi", "e1", "--membership")
    assert code == 0 and text.splitlines() == ["E1", "in image of psi: True"]


def test_flags_accepted_before_and_after_command():
    a = run("--rank", "2", "hc", "E1*F1")
    b = run("hc", "E1*F1", "--rank", "2")
    assert a == b and a[0] == 0


def test_orbit_height_flag():
    code, text = run("orbit", "--seed", "2", "--height", "2")
    assert code == 0 and text.startswith("# height 2, 4 elements")


def test_ad():
    assert run("ad", "E1", "K[-2]") == (0, "(-1 + v^2)*K[-2]*E1\n")


def test_casimir_and_hc():
    code, text = run("casimir", "--two-lambda", "2")
    assert code == 0
    assert "hc(z) = v^-1*K[-2] + v*K[2]" in text
    code, text = run("casimir", "--two-lambda", "2", "--method", "window", "--height", "2")
    assert code == 0 and "z = v^-1*K[-2] + v*K[2]" in text


def test_scasimir():
    code, text = run("scasimir")
    assert code == 0
    assert "anticommutes with odd generators: True" in text


def test_eval():
    assert run("eval", "K[2]", "--character", "v") == (0, "v\n")


def test_verma_commands():
    assert run("verma", "act", "E1*F1", "--character", "v") == (0, "((v)/(1 + v^2))*v\n")
    code, text = run("verma", "singular", "--character", "v", "--height", "3")
    assert code == 0 and text.startswith("[4]\tF1^2*v")
    code, text = run("verma", "scasimir-spectrum", "--character", "v")
    assert text.splitlines() == ["grade 0: v^-2 + v^2", "grade 1: -v^-2 - v^2"]
    assert run("verma", "criterion", "--character", "I*v^-1") == (0, "false\n")
    assert run("verma", "annihilation-check", "--character", "I*v^-1") == (0, "pass\n")


def test_verify_tsv_and_nested():
    code, text = run("verify", "hopf")
    assert code == 0
    rows = [r.split("\t") for r in text.splitlines()]
    assert [r[0] for r in rows] == ["hopf.001", "hopf.002", "hopf.003"]
    assert all(r[2] == "pass" for r in rows)
    code, text = run("verify", "hopf", "--report", "nested")
    assert code == 0 and json.loads(text)


def test_verify_is_deterministic():
    assert run("verify", "zhang") == run("verify", "zhang")


def test_bar_relations():
    code, text = run("verify", "bar-relations", "--rank", "2")
    assert code == 0 and "fail" not in text


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "zhang", "--rho", "literal"),
        ("--rank", "0", "hc", "1"),
        ("normal-form", "E3"),
        ("normal-form", "E1*"),
        ("verma", "annihilation-check", "--character", "v^3"),
        ("verma", "act", "--character", "v"),
        ("eval", "K[2]", "--character", "v,v"),
        ("frobnicate",),
    ],
)
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_memo_budget_exit(monkeypatch):
    monkeypatch.setenv("OSPQ_MEMO_BUDGET", "5")
    code, _ = run("--rank", "3", "casimir", "--two-lambda", "2,2,2", "--method", "window")
    assert code == 3
