import io
import json
import subprocess
import sys

import pytest

from crwl.cli import run


@pytest.fixture
def prog(tmp_path):
    path = tmp_path / "p.crwl"
    path.write_text("f(X,X) -> a;\n", encoding="utf-8")
    return str(path)


@pytest.fixture
def coin(tmp_path):
    path = tmp_path / "coin.crwl"
    path.write_text("coin -> heads;\ncoin -> tails;\ndouble(X) -> pair(X,X);\n", encoding="utf-8")
    return str(path)


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_prove_then_check(prog, tmp_path):
    code, text = call("prove", prog, "-e", "f(a,b)", "-t", "a", "--depth", "3")
    assert code == 0
    cert = json.loads(text)
    assert cert["rule"] == "OR" and cert["subst"] == {"X": "_|_"}
    path = tmp_path / "cert.json"
    path.write_text(text, encoding="utf-8")
    assert call("check", prog, str(path)) == (0, "valid\n")


def test_prove_not_found(prog, capsys):
    code, text = call("prove", prog, "-e", "f(a,b)", "-t", "b", "--depth", "3")
    assert code == 1 and text == ""
    assert "within bounds" in capsys.readouterr().err


def test_eval_variable(prog):
    code, text = call("eval", prog, "-e", "X", "--depth", "1")
    lines = text.splitlines()
    assert code == 0
    assert "values derivable within bounds" in lines[0]
    assert lines[1:] == ["_|_", "X"]


def test_eval_json(coin):
    code, text = call("eval", coin, "-e", "double(coin)", "--depth", "4", "--json")
    values = json.loads(text)
    assert code == 0
    assert "pair(heads,heads)" in values and "pair(heads,tails)" not in values


def test_eval_extra_variable_pool(tmp_path):
    path = tmp_path / "g.crwl"
    path.write_text("g -> Y;", encoding="utf-8")
    code, text = call("eval", str(path), "-e", "g", "--depth", "2", "--vars", "W")
    assert text.splitlines()[1:] == ["_|_", "W"]


def test_check_bad_certificate(prog, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"rule": "B", "expr": "f(a,b)", "value": "a", "children": []}))
    code, text = call("check", prog, str(bad))
    assert code == 1
    assert text.startswith("at [] [B]")


def test_check_parse_error(prog, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call("check", prog, str(bad))[0] == 2


def test_lint(prog, coin):
    code, text = call("lint", prog)
    assert code == 1 and "NonLinearLhs" in text
    assert call("lint", coin) == (0, "no issues\n")


def test_lower():
    assert call("lower", "-e", "c(a)") == (0, "_|_\nc(_|_)\nc(a)\n")


def test_parse_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.crwl"
    bad.write_text("f(X -> a;")
    assert call("lint", str(bad))[0] == 2
    assert call("eval", str(bad), "-e", "a", "--depth", "1")[0] == 2
    assert call("lower", "-e", "c(")[0] == 2
    assert call("eval", str(tmp_path / "missing.crwl"), "-e", "a", "--depth", "1")[0] == 2
    assert call("props", "--suite", "nope")[0] == 2
    with pytest.raises(SystemExit) as info:
        call("eval")
    assert info.value.code == 2


def test_props_single_suite():
    code, text = call("props", "--suite", "order", "--cases", "30")
    assert code == 0
    assert text.splitlines()[-1] == "6 properties, 0 failed (seed 42)"


def test_props_replay_one_case():
    code, text = call("props", "--prop", "oracle_agreement", "--case", "17")
    assert code == 0 and text.startswith("PASS oracle/oracle_agreement: 1 cases")


def test_props_list():
    code, text = call("props", "--list")
    assert code == 0 and "theorems/polarity_valid" in text.splitlines()


def test_module_entry_point(prog):
    proc = subprocess.run([sys.executable, "-m", "crwl", "eval", prog, "-e", "X", "--depth", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.splitlines()[1:] == ["_|_", "X"]
