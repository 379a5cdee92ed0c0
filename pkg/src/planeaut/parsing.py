"""Recursive-descent parser for polynomial expressions in x and y.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power (['*'] power)*          # juxtaposition multiplies
    power  := atom ('^' INT)?
    atom   := INT ['/' INT] | 'x' | 'y' | '(' expr ')'

The parser is generic over the target ring: the caller supplies the two
generators and a constructor for scalars, and products are formed in the
order they are written, so the same code serves commutative and
noncommutative polynomials.
"""

from __future__ import annotations

import re
from typing import Callable

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])|([-+*/^()]))")


def _tokenize(text: str) -> list[str]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, gens, const):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.gens = gens
        self.const = const

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'more input'} in {self.text!r}")
        self.pos += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.power()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                acc = acc * self.power()
            elif tok is not None and (tok in ("x", "y", "(") or tok.isdigit()):
                acc = acc * self.power()
            else:
                return acc

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            return base ** int(tok)
        return base

    def atom(self):
        tok = self.take()
        if tok.isdigit():
            if self.peek() == "/":
                self.take()
                den = self.take()
                if not den.isdigit():
                    raise ParseError(f"bad rational literal in {self.text!r}")
                return self.const(f"{tok}/{den}")
            return self.const(tok)
        if tok in self.gens:
            return self.gens[tok]
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {tok!r} in {self.text!r}")


def parse_expression(text: str, x, y, const: Callable[[str], object]):
    """Evaluate ``text`` in the ring generated by ``x`` and ``y``."""
    parser = _Parser(text, {"x": x, "y": y}, const)
    if parser.peek() is None:
        raise ParseError("empty polynomial")
    result = parser.expr()
    if parser.peek() is not None:
        raise ParseError(f"trailing input {parser.peek()!r} in {text!r}")
    return result
