"""Recursive-descent parser for operator expressions.

Grammar::

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' uint)?
    atom     := 'a' | 'ad' | 'n' | rational | '(' expr ')' | '[' expr ',' expr ']'
    rational := int ('/' uint)?
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from ..errors import ParseError
from .expr import Commutator, Generator, OperatorExpr, Power, Product, ScalarMul, Sum

_TOKEN = re.compile(r"\s*(?:(?P<decimal>\d+\.\d*)|(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()\[\],])|(?P<bad>\S))")


class Token(NamedTuple):
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        if kind is None:
            continue
        value = m.group(kind)
        pos = m.start(kind)
        if kind == "decimal" and tokens and tokens[-1].text == "^":
            raise ParseError("non-integer exponent", pos)
        if kind == "decimal":
            raise ParseError(f"decimal {value!r}: scalars must be written as rationals like 3/2", pos)
        if kind == "bad":
            raise ParseError(f"unexpected character {value!r}", pos)
        if kind == "name" and value not in ("a", "ad", "n"):
            raise ParseError(f"unknown symbol {value!r}", pos)
        tokens.append(Token(kind, value, pos))
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        if self.tok.text != text:
            raise ParseError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}", self.tok.pos)
        return self.advance()

    def parse(self) -> OperatorExpr:
        expr = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return expr

    def expr(self) -> OperatorExpr:
        terms, signs = [self.term()], [1]
        while self.tok.text in ("+", "-"):
            signs.append(1 if self.advance().text == "+" else -1)
            terms.append(self.term())
        if len(terms) == 1:
            return terms[0]
        return Sum(tuple(terms), tuple(signs))

    def term(self) -> OperatorExpr:
        factors = [self.factor()]
        while self.tok.text == "*":
            self.advance()
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return Product(tuple(factors))

    def factor(self) -> OperatorExpr:
        atom = self.atom()
        if self.tok.text != "^":
            return atom
        self.advance()
        tok = self.tok
        if tok.text == "-":
            raise ParseError("negative exponent", tok.pos)
        if tok.kind != "int":
            raise ParseError("exponent must be a non-negative integer", tok.pos)
        self.advance()
        if self.tok.text == "/":
            raise ParseError("non-integer exponent", tok.pos)
        return Power(atom, int(tok.text))

    def atom(self) -> OperatorExpr:
        tok = self.tok
        if tok.kind == "name":
            self.advance()
            return Generator(tok.text)
        if tok.kind == "int" or (tok.text == "-" and self.tokens[self.i + 1].kind == "int"):
            return self.rational()
        if tok.text == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.text == "[":
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Commutator(left, right)
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos)

    def rational(self) -> ScalarMul:
        sign = 1
        if self.tok.text == "-":
            self.advance()
            sign = -1
        num = int(self.advance().text)
        den = 1
        if self.tok.text == "/":
            self.advance()
            if self.tok.kind != "int":
                raise ParseError("expected an unsigned integer denominator", self.tok.pos)
            den = int(self.advance().text)
            if den == 0:
                raise ParseError("zero denominator", self.tokens[self.i - 1].pos)
        return ScalarMul(Fraction(sign * num, den))


def parse(text: str) -> OperatorExpr:
    """Parse an operator expression such as ``"[a^2, ad^2]"`` or ``"ad^2*a^2"``."""
    return _Parser(text).parse()
