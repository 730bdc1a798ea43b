"""Recursive-descent parser for polynomial expressions.

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' exponent)?
    atom   := rational | variable | '(' expr ')'

Exponents are non-negative integers, except that a bare ``x`` may take a
signed exponent (``x^-2``) so that rendered Laurent polynomials read back.

Two vocabularies are available.  In ``"ring"`` mode the variables are
x, y, z, u, t, c and the names v, w, p (and v0, w0, p0) expand to their frame
definitions.  In ``"presentation"`` mode the expression is read over the
abstract generators: Y, V, W, T (also y, v, w, t, v0, w0) and x, c.
"""

from __future__ import annotations

import re
from typing import List, NamedTuple

from .arith import MultiPoly, VenlabError, var
from .maps import STANDARD_FRAME, ZERO_FRAME, T, V, W, Y


class ParseError(VenlabError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownVariable(ParseError):
    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown variable {name!r}", offset)
        self.name = name


class _Tok(NamedTuple):
    kind: str
    text: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")

_RING_NAMES = {
    **{n: var(n) for n in ("x", "y", "z", "u", "t", "c")},
    "p": STANDARD_FRAME.p, "v": STANDARD_FRAME.v, "w": STANDARD_FRAME.w,
    "p0": ZERO_FRAME.p, "v0": ZERO_FRAME.v, "w0": ZERO_FRAME.w,
}

_PRESENTATION_NAMES = {
    "x": var("x"), "c": var("c"),
    "Y": Y, "V": V, "W": W, "T": T,
    "y": Y, "v": V, "w": W, "t": T, "v0": V, "w0": W,
}

MODES = {"ring": _RING_NAMES, "presentation": _PRESENTATION_NAMES}


def _tokenize(text: str) -> List[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        out.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, names):
        self.toks = _tokenize(text)
        self.i = 0
        self.names = names

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> _Tok:
        tok = self.take()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(f"expected {op!r}, found {tok.text or 'end of input'!r}", tok.pos)
        return tok

    def parse(self) -> MultiPoly:
        result = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.pos)
        return result

    def expr(self) -> MultiPoly:
        negate = False
        if self.peek().kind == "op" and self.peek().text == "-":
            self.take()
            negate = True
        total = self.term()
        if negate:
            total = -total
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            total = total + rhs if op == "+" else total - rhs
        return total

    def term(self) -> MultiPoly:
        prod = self.factor()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.take()
            prod = prod * self.factor()
        return prod

    def factor(self) -> MultiPoly:
        start = self.peek()
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            sign = 1
            tok = self.peek()
            if tok.kind == "op" and tok.text == "-":
                if not (start.kind == "name" and start.text == "x"):
                    raise ParseError("negative exponents are only allowed on x", tok.pos)
                self.take()
                sign = -1
            tok = self.take()
            if tok.kind != "num":
                raise ParseError("expected an exponent", tok.pos)
            exp = int(tok.text)
            if sign < 0:
                return MultiPoly.monomial(1, x=-exp)
            return base ** exp
        return base

    def atom(self) -> MultiPoly:
        tok = self.take()
        if tok.kind == "num":
            num = int(tok.text)
            if self.peek().kind == "op" and self.peek().text == "/":
                self.take()
                den = self.take()
                if den.kind != "num":
                    raise ParseError("expected a denominator", den.pos)
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.pos)
                return MultiPoly.const(f"{num}/{den.text}")
            return MultiPoly.const(num)
        if tok.kind == "name":
            if tok.text not in self.names:
                raise UnknownVariable(tok.text, tok.pos)
            return self.names[tok.text]
        if tok.kind == "op" and tok.text == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos)


def parse_expr(text: str, mode: str = "ring") -> MultiPoly:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    return _Parser(text, MODES[mode]).parse()
