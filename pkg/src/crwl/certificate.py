"""JSON certificates for derivations.

Each node is an object with ``rule``, ``expr``, ``value`` and ``children``;
OR nodes also carry ``rule_index`` and ``subst`` (variable name to
expression text).  Expressions use the program text grammar plus ``_|_``.
"""

from __future__ import annotations

import json
import re
from typing import Any, Mapping

from .calculus import Derivation, Rule, Statement, Witness
from .subst import Subst
from .term import ParseError, Symbol, parse_expr, print_expr

__all__ = ["CertificateError", "to_json", "from_json", "dumps", "loads"]


class CertificateError(ParseError):
    pass


_VAR_NAME = re.compile(r"[A-Z][A-Za-z0-9_]*")


def to_json(d: Derivation) -> dict[str, Any]:
    node: dict[str, Any] = {
        "rule": d.rule.value,
        "expr": print_expr(d.expr),
        "value": print_expr(d.value),
    }
    if d.witness is not None:
        node["rule_index"] = d.witness.rule_index
        node["subst"] = {k: print_expr(v) for k, v in d.witness.subst.items()}
    node["children"] = [to_json(c) for c in d.children]
    return node


def dumps(d: Derivation) -> str:
    return json.dumps(to_json(d), indent=2, ensure_ascii=False)


def from_json(obj: Any, signature: Mapping[str, Symbol], _path: tuple[int, ...] = ()) -> Derivation:
    """Rebuild a derivation; witness presence is not validated here, the
    checker reports OR nodes without one."""
    where = f"node {list(_path)}"
    if not isinstance(obj, dict):
        raise CertificateError(f"{where}: expected an object")
    try:
        rule = Rule(obj["rule"])
    except (KeyError, ValueError):
        raise CertificateError(f"{where}: missing or unknown rule {obj.get('rule')!r}") from None
    try:
        expr = parse_expr(obj["expr"], signature)
        value = parse_expr(obj["value"], signature)
    except KeyError as exc:
        raise CertificateError(f"{where}: missing field {exc.args[0]!r}") from None
    except ParseError as exc:
        raise CertificateError(f"{where}: {exc}") from None
    witness = None
    if "rule_index" in obj or "subst" in obj:
        idx = obj.get("rule_index")
        raw = obj.get("subst")
        if not isinstance(idx, int) or isinstance(idx, bool) or not isinstance(raw, dict):
            raise CertificateError(f"{where}: malformed rule_index/subst")
        for k in raw:
            if not _VAR_NAME.fullmatch(k):
                raise CertificateError(f"{where}: substitution key {k!r} is not a variable name")
        try:
            theta = Subst({k: parse_expr(v, signature) for k, v in raw.items()})
        except (ParseError, TypeError) as exc:
            raise CertificateError(f"{where}: bad substitution: {exc}") from None
        witness = Witness(idx, theta)
    kids = obj.get("children", [])
    if not isinstance(kids, list):
        raise CertificateError(f"{where}: children must be an array")
    children = tuple(from_json(c, signature, _path + (i,)) for i, c in enumerate(kids))
    return Derivation(Statement(expr, value), rule, witness, children)


def loads(text: str, signature: Mapping[str, Symbol]) -> Derivation:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"invalid JSON: {exc}") from None
    return from_json(obj, signature)
