"""Recursive-descent parser for polynomial text.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('+' | '-') unary | power
    power   := atom ('^' INTEGER)?
    atom    := INTEGER | IDENT | '(' expr ')'

Multiplication must be written out: ``2x`` and ``x y`` are rejected.
Division is only allowed by nonzero constants, so ``3/4*x`` parses.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .poly import Polynomial

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")
# unicode minus and multiplication signs show up in copy-pasted formulas
_TRANSLATE = str.maketrans({"−": "-", "×": "*", "·": "*"})


class _Parser:
    def __init__(self, text: str, vars: Sequence[str]):
        self.text = text.translate(_TRANSLATE)
        self.vars = tuple(vars)
        self.tokens = self._tokenize()
        self.i = 0

    def _error(self, message, pos):
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return ParseError(message, line, col, self.text)

    def _tokenize(self):
        tokens = []
        pos = 0
        n = len(self.text)
        while pos < n:
            if self.text[pos:].strip() == "":
                break
            m = _TOKEN.match(self.text, pos)
            if not m:
                bad = pos + len(self.text[pos:]) - len(self.text[pos:].lstrip())
                raise self._error(f"unexpected character {self.text[bad]!r}", bad)
            kind = m.lastgroup
            start = m.start(kind)
            tokens.append((kind, m.group(kind), start))
            pos = m.end()
        tokens.append(("end", "", n))
        return tokens

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise self._error(f"expected {op!r}, found {val or 'end of input'!r}", pos)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise self._error("empty polynomial", 0)
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            if kind in ("num", "ident") or val == "(":
                raise self._error("implicit multiplication is not allowed; write '*'", pos)
            raise self._error(f"unexpected {val!r}", pos)
        return p

    def expr(self):
        p = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self):
        p = self.unary()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                q = self.unary()
                if val == "*":
                    p = p * q
                else:
                    if not q.is_constant() or q.is_zero():
                        raise self._error("division is only allowed by a nonzero constant", pos)
                    p = p.scale(1 / q.leading_coefficient())
            else:
                return p

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            q = self.unary()
            return -q if val == "-" else q
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k_kind, k_val, k_pos = self.take()
            if k_kind != "num":
                raise self._error("exponent must be a non-negative integer literal", k_pos)
            return base ** int(k_val)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return Polynomial.constant(self.vars, Fraction(int(val)))
        if kind == "ident":
            if val not in self.vars:
                raise self._error(f"unknown variable {val!r} (expected one of {', '.join(self.vars)})", pos)
            return Polynomial.variable(self.vars, val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise self._error(f"unexpected {val or 'end of input'!r}", pos)


def parse_poly(text: str, vars: Sequence[str]) -> Polynomial:
    """Parse ``text`` as a polynomial over ``vars``."""
    return _Parser(text, vars).parse()
