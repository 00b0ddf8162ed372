"""Recursive-descent parser for polynomial expressions, plus point and variable syntax.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' NAT)?
    atom   := NAT | IDENT | '(' expr ')' | '-' factor

Identifiers may carry trailing primes (x2'') which are display-only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DomainError, ParseError
from .ffpoly import Polynomial, Ring
from .ideals import PointSpec

_TOKEN = re.compile(r"\s*(?:(?P<nat>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)|(?P<op>[-+*^()]))")


@dataclass
class Token:
    kind: str   # nat | ident | op | end
    text: str
    line: int
    col: int


def tokenize(src: str) -> list:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while True:
        while pos < len(src) and src[pos].isspace():
            if src[pos] == "\n":
                line, line_start = line + 1, pos + 1
            pos += 1
        if pos >= len(src):
            tokens.append(Token("end", "", line, pos - line_start + 1))
            return tokens
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1,
                             ("number", "identifier", "+", "-", "*", "^", "(", ")"))
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(Token(kind, m.group(kind), line, start - line_start + 1))
        pos = m.end()


class _Parser:
    def __init__(self, src: str, ring: Ring):
        self.toks = tokenize(src)
        self.i = 0
        self.ring = ring

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, expected):
        t = self.tok
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"unexpected {what}", t.line, t.col, expected)

    def accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def parse(self) -> Polynomial:
        value = self.expr()
        if self.tok.kind != "end":
            self.fail(("+", "-", "*", "^", "end of input"))
        return value

    def expr(self) -> Polynomial:
        value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> Polynomial:
        value = self.factor()
        while self.accept("*"):
            value = value * self.factor()
        return value

    def factor(self) -> Polynomial:
        base = self.atom()
        caret = self.tok
        if self.accept("^"):
            if self.tok.kind != "nat":
                raise ParseError("dangling '^'", caret.line, caret.col, ("natural-number exponent",))
            k = int(self.tok.text)
            self.i += 1
            return base ** k
        return base

    def atom(self) -> Polynomial:
        t = self.tok
        if t.kind == "nat":
            self.i += 1
            return self.ring.const(int(t.text))
        if t.kind == "ident":
            self.i += 1
            base = t.text.rstrip("'")
            if base not in self.ring.names:
                raise ParseError(f"undeclared identifier {t.text!r}", t.line, t.col,
                                 self.ring.names)
            return self.ring.var(base)
        if self.accept("("):
            value = self.expr()
            if not self.accept(")"):
                self.fail((")",))
            return value
        if self.accept("-"):
            return -self.factor()
        self.fail(("number", "identifier", "(", "-"))


def parse_poly(src: str, ring: Ring) -> Polynomial:
    return _Parser(src, ring).parse()


_RANGE = re.compile(r"^([A-Za-z_]+)(\d+)\.\.([A-Za-z_]+)?(\d+)$")


def parse_vars(spec: str) -> tuple:
    """'x1..x5' or 'x,y,z' (mixed allowed: 'x1..x3,y')."""
    names = []
    for item in (s.strip() for s in spec.split(",")):
        if not item:
            continue
        m = _RANGE.match(item)
        if m:
            prefix, lo, prefix2, hi = m.groups()
            if prefix2 not in (None, prefix) or int(lo) > int(hi):
                raise DomainError(f"bad variable range {item!r}")
            names.extend(f"{prefix}{k}" for k in range(int(lo), int(hi) + 1))
        elif re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", item):
            names.append(item)
        else:
            raise DomainError(f"bad variable name {item!r}")
    if not names:
        raise DomainError("empty variable list")
    return tuple(names)


def parse_name_list(spec: str, ring: Ring) -> list:
    return [ring.index(s.strip()) for s in spec.replace(";", ",").split(",") if s.strip()]


def parse_point(spec: str, ring: Ring) -> PointSpec:
    """origin | point:a1,...,an | generic:v1,v2,..."""
    spec = spec.strip()
    if spec == "origin":
        return PointSpec.origin(ring)
    kind, sep, rest = spec.partition(":")
    if not sep:
        raise DomainError(f"bad point {spec!r}: use origin, point:a1,...,an or generic:v1,...")
    if kind == "point":
        try:
            coords = [int(c) for c in rest.split(",")]
        except ValueError:
            raise DomainError(f"bad coordinates in {spec!r}") from None
        return PointSpec.rational(ring, coords)
    if kind == "generic":
        return PointSpec.generic(ring, parse_name_list(rest, ring))
    raise DomainError(f"unknown point kind {kind!r}")


def parse_monomial_exp(src: str, ring: Ring) -> tuple:
    f = parse_poly(src, ring)
    if not f.is_monomial() or f.terms[next(iter(f.terms))] != 1:
        raise DomainError(f"{src!r} is not a monic monomial")
    return next(iter(f.terms))
