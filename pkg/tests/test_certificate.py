import json

import pytest

from crwl.calculus import Bounds, check_derivation, prove
from crwl.certificate import CertificateError, dumps, from_json, loads, to_json
from crwl.term import parse_expr, parse_program

P = parse_program("f(X,X) -> a;")


def test_roundtrip():
    d = prove(P, parse_expr("f(a,b)", P.signature), parse_expr("a", P.signature), Bounds(3))
    text = dumps(d)
    assert loads(text, P.signature) == d
    assert list(json.loads(text)) == ["rule", "expr", "value", "rule_index", "subst", "children"]


def test_extra_variable_witness_roundtrip():
    p = parse_program("g(Y) -> c(Y,Z); data b/0;")
    d = prove(p, parse_expr("g(a)", p.signature), parse_expr("c(a,b)", p.signature), Bounds(3))
    assert d.witness.subst["Z"] == parse_expr("b", p.signature)
    back = loads(dumps(d), p.signature)
    assert back == d and check_derivation(p, back).valid


@pytest.mark.parametrize("obj", [
    [],
    {"rule": "X", "expr": "a", "value": "a"},
    {"rule": "B", "expr": "a("},
    {"rule": "OR", "expr": "f(a,b)", "value": "a", "rule_index": "0", "subst": {}},
    {"rule": "OR", "expr": "f(a,b)", "value": "a", "rule_index": 0, "subst": {"x": "a"}},
    {"rule": "B", "expr": "a", "value": "_|_", "children": {}},
    {"rule": "OR", "expr": "f(a,b)", "value": "a", "rule_index": 0},
])
def test_malformed(obj):
    with pytest.raises(CertificateError):
        from_json(obj, P.signature)


def test_invalid_json():
    with pytest.raises(CertificateError):
        loads("{", P.signature)


def test_or_without_witness_is_a_violation_not_a_parse_error():
    d = from_json({"rule": "OR", "expr": "f(a,b)", "value": "a", "children": []}, P.signature)
    assert "witness" in str(check_derivation(P, d))
    assert to_json(d)["rule"] == "OR"
