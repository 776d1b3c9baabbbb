"""Canonical linear text form for DRSs and lambda terms.

Used by golden files and the CLI's linear renderer::

    drs([x:1,e:2],[pred(bar,[x:1]),alpha(drs([x:3],[])),impl(D1,D2),
        not(D),or(D1,D2),eq(x:1,x:3),qualia(telic,D-or-lam)])

Markers serialize as ``sort-tag:index`` with ``x`` for entities and ``e`` for
events.  Lambda terms use ``lam(m:type,body)``, ``app(f,a)`` and
``oplus(a,b)``; types are ``e``, ``t`` and ``<a,b>``.  Parsing is
whitespace-insensitive; the writer emits no whitespace, so output is
byte-stable.
"""
from __future__ import annotations

import re

from .drs import (
    Alpha,
    Condition,
    Disj,
    Drs,
    Eq,
    Impl,
    Marker,
    Neg,
    Pred,
    Qualia,
    QualiaRole,
    marker_from_text,
)
from .errors import ParseError
from .terms import App, AtomType, CondTerm, E, Fn, LambdaDrs, Leaf, Merge, SemType, T, Term, Var

# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------


def write_marker(m: Marker) -> str:
    return str(m)


def write_type(t: SemType) -> str:
    if isinstance(t, AtomType):
        return t.name
    if isinstance(t, Fn):
        return f"<{write_type(t.arg)},{write_type(t.result)}>"
    raise ValueError(f"not a type: {t!r}")


def write_condition(c: Condition) -> str:
    if isinstance(c, Pred):
        return f"pred({c.name},[{','.join(map(write_marker, c.args))}])"
    if isinstance(c, Eq):
        return f"eq({write_marker(c.left)},{write_marker(c.right)})"
    if isinstance(c, Impl):
        return f"impl({write_drs(c.antecedent)},{write_drs(c.consequent)})"
    if isinstance(c, Neg):
        return f"not({write_drs(c.inner)})"
    if isinstance(c, Disj):
        return f"or({write_drs(c.left)},{write_drs(c.right)})"
    if isinstance(c, Alpha):
        return f"alpha({write_drs(c.inner)})"
    if isinstance(c, Qualia):
        payload = (
            write_drs(c.payload) if isinstance(c.payload, Drs) else write_term(c.payload)
        )
        return f"qualia({c.role.value},{payload})"
    raise ValueError(f"not a condition: {c!r}")


def write_drs(d: Drs) -> str:
    markers = ",".join(write_marker(m) for m in d.universe)
    conds = ",".join(write_condition(c) for c in d.conditions)
    return f"drs([{markers}],[{conds}])"


def write_term(t: Term) -> str:
    if isinstance(t, Leaf):
        return write_drs(t.drs)
    if isinstance(t, Var):
        return write_marker(t.marker)
    if isinstance(t, App):
        return f"app({write_term(t.fn)},{write_term(t.arg)})"
    if isinstance(t, Merge):
        return f"oplus({write_term(t.left)},{write_term(t.right)})"
    if isinstance(t, CondTerm):
        name = {"alpha": "alpha", "impl": "impl"}[t.kind]
        return f"{name}({','.join(write_term(op) for op in t.operands)})"
    if isinstance(t, LambdaDrs):
        body = write_term(t.body)
        for m, ty in reversed(t.params):
            body = f"lam({write_marker(m)}:{write_type(ty)},{body})"
        return body
    raise ValueError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_-]*|\d+|[()\[\],:<>])")
_ROLES = {r.value: r for r in QualiaRole}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[str] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                if text[pos:].strip():
                    raise ParseError(f"bad character at offset {pos}: {text[pos]!r}")
                break
            self.tokens.append(m.group(1))
            pos = m.end()
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input (expected {expected!r})")
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}")
        self.pos += 1
        return tok

    def done(self) -> None:
        if self.peek() is not None:
            raise ParseError(f"trailing input from token {self.peek()!r}")

    # -- pieces -----------------------------------------------------------

    def marker(self) -> Marker:
        tag = self.take()
        self.take(":")
        idx = self.take()
        if not idx.isdigit():
            raise ParseError(f"marker index must be a number, found {idx!r}")
        try:
            return marker_from_text(f"{tag}:{idx}")
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def type_(self) -> SemType:
        tok = self.take()
        if tok == "e":
            return E
        if tok == "t":
            return T
        if tok == "<":
            arg = self.type_()
            self.take(",")
            result = self.type_()
            self.take(">")
            return Fn(arg, result)
        raise ParseError(f"expected a type, found {tok!r}")

    def marker_list(self) -> list[Marker]:
        self.take("[")
        out = []
        while self.peek() != "]":
            out.append(self.marker())
            if self.peek() == ",":
                self.take(",")
        self.take("]")
        return out

    def drs(self) -> Drs:
        self.take("drs")
        self.take("(")
        universe = self.marker_list()
        self.take(",")
        self.take("[")
        conds = []
        while self.peek() != "]":
            conds.append(self.condition())
            if self.peek() == ",":
                self.take(",")
        self.take("]")
        self.take(")")
        return Drs(universe, conds)

    def condition(self) -> Condition:
        head = self.take()
        self.take("(")
        if head == "pred":
            name = self.take()
            self.take(",")
            args = self.marker_list()
            self.take(")")
            return Pred(name, tuple(args))
        if head == "eq":
            left = self.marker()
            self.take(",")
            right = self.marker()
            self.take(")")
            return Eq(left, right)
        if head == "impl":
            a = self.drs()
            self.take(",")
            b = self.drs()
            self.take(")")
            return Impl(a, b)
        if head == "not":
            inner = self.drs()
            self.take(")")
            return Neg(inner)
        if head == "or":
            a = self.drs()
            self.take(",")
            b = self.drs()
            self.take(")")
            return Disj(a, b)
        if head == "alpha":
            inner = self.drs()
            self.take(")")
            return Alpha(inner)
        if head == "qualia":
            role_name = self.take()
            if role_name not in _ROLES:
                raise ParseError(f"unknown qualia role {role_name!r}")
            self.take(",")
            payload: object
            if self.peek() == "drs":
                payload = self.drs()
            else:
                payload = self.term()
            self.take(")")
            return Qualia(_ROLES[role_name], payload)
        raise ParseError(f"unknown condition head {head!r}")

    def term(self) -> Term:
        tok = self.peek()
        if tok == "drs":
            return Leaf(self.drs())
        if tok == "lam":
            self.take("lam")
            self.take("(")
            m = self.marker()
            self.take(":")
            ty = self.type_()
            self.take(",")
            body = self.term()
            self.take(")")
            if isinstance(body, LambdaDrs):
                return LambdaDrs(((m, ty),) + body.params, body.body)
            return LambdaDrs(((m, ty),), body)
        if tok == "app":
            self.take("app")
            self.take("(")
            fn = self.term()
            self.take(",")
            arg = self.term()
            self.take(")")
            return App(fn, arg)
        if tok == "oplus":
            self.take("oplus")
            self.take("(")
            left = self.term()
            self.take(",")
            right = self.term()
            self.take(")")
            return Merge(left, right)
        # a bare marker is a type-e variable occurrence
        m = self.marker()
        return Var(m, E)


def parse_drs(text: str) -> Drs:
    p = _Parser(text)
    out = p.drs()
    p.done()
    return out


def parse_term(text: str) -> Term:
    p = _Parser(text)
    out = p.term()
    p.done()
    return out
