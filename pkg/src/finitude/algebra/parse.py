"""Expression front end.

Grammar (ASCII only)::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := ('-')* base ('^' integer)?
    base   := number | name | '(' expr ')'

Expressions are evaluated into an exact bivariate rational form and then
classified: two declared variables give a :class:`BivariatePolynomial`
(the denominator must be constant), one gives a :class:`RationalFunction`.
"""

from __future__ import annotations

import re

from ..errors import ExprSyntaxError, NonPolynomialExponent, UndeclaredVariable
from .gaussian import GaussianRational
from .poly import BivariatePolynomial, RationalFunction, UnivariatePolynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^]))")


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.index = 0

    def _scan(self):
        pos = 0
        while pos < len(self.text):
            m = _TOKEN.match(self.text, pos)
            if not m or m.end() == pos:
                stripped = self.text[pos:].lstrip()
                if not stripped:
                    break
                bad_at = len(self.text) - len(stripped)
                raise ExprSyntaxError(
                    f"unexpected character {stripped[0]!r}", bad_at)
            if m.group(1) is not None:
                self.tokens.append(("int", int(m.group(1)), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("name", m.group(2), m.start(2)))
            else:
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()

    def peek(self):
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ("end", None, len(self.text))

    def next(self):
        tok = self.peek()
        self.index += 1
        return tok


class _BiRat:
    """Internal quotient of bivariate polynomials used during evaluation."""

    __slots__ = ("num", "den")

    def __init__(self, num: BivariatePolynomial, den: BivariatePolynomial):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in expression")
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(p: BivariatePolynomial) -> "_BiRat":
        return _BiRat(p, BivariatePolynomial.constant(1))

    def __add__(self, other):
        return _BiRat(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    def __sub__(self, other):
        return _BiRat(self.num * other.den - other.num * self.den,
                      self.den * other.den)

    def __mul__(self, other):
        return _BiRat(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero in expression")
        return _BiRat(self.num * other.den, self.den * other.num)

    def __neg__(self):
        return _BiRat(-self.num, self.den)

    def pow(self, k: int) -> "_BiRat":
        if k >= 0:
            return _BiRat(self.num ** k, self.den ** k)
        return _BiRat(self.den ** (-k), self.num ** (-k))


class _Parser:
    def __init__(self, text: str, variables):
        self.toks = _Tokenizer(text)
        self.variables = list(variables)
        if len(self.variables) not in (1, 2):
            raise ValueError("parse_expression expects one or two variables")

    def parse(self) -> _BiRat:
        value = self.expr()
        kind, tok, pos = self.toks.peek()
        if kind != "end":
            raise ExprSyntaxError(f"trailing input {tok!r}", pos)
        return value

    def expr(self) -> _BiRat:
        value = self.term()
        while True:
            kind, tok, _ = self.toks.peek()
            if kind == "op" and tok in "+-":
                self.toks.next()
                rhs = self.term()
                value = value + rhs if tok == "+" else value - rhs
            else:
                return value

    def term(self) -> _BiRat:
        value = self.factor()
        while True:
            kind, tok, _ = self.toks.peek()
            if kind == "op" and tok in "*/":
                self.toks.next()
                rhs = self.factor()
                value = value * rhs if tok == "*" else value / rhs
            else:
                return value

    def factor(self) -> _BiRat:
        kind, tok, pos = self.toks.peek()
        if kind == "op" and tok == "-":
            self.toks.next()
            return -self.factor()
        value, is_var = self.base()
        kind, tok, pos = self.toks.peek()
        if kind == "op" and tok == "^":
            self.toks.next()
            exp, exp_pos = self.integer()
            if exp < 0 and is_var:
                raise NonPolynomialExponent(
                    f"negative power of a variable at position {exp_pos}")
            value = value.pow(exp)
        return value

    def integer(self):
        kind, tok, pos = self.toks.peek()
        negative = False
        if kind == "op" and tok == "-":
            self.toks.next()
            negative = True
            kind, tok, pos = self.toks.peek()
        if kind != "int":
            raise ExprSyntaxError("malformed exponent", pos, expected="integer")
        self.toks.next()
        return (-tok if negative else tok), pos

    def base(self):
        kind, tok, pos = self.toks.next()
        if kind == "int":
            return _BiRat.from_poly(BivariatePolynomial.constant(tok)), False
        if kind == "name":
            if tok == "i":
                return _BiRat.from_poly(
                    BivariatePolynomial.constant(GaussianRational(0, 1))), False
            if tok not in self.variables:
                raise UndeclaredVariable(
                    f"undeclared variable {tok!r} at position {pos}")
            if self.variables.index(tok) == 0:
                return _BiRat.from_poly(BivariatePolynomial.var_x()), True
            return _BiRat.from_poly(BivariatePolynomial.var_y()), True
        if kind == "op" and tok == "(":
            value = self.expr()
            kind2, tok2, pos2 = self.toks.next()
            if kind2 != "op" or tok2 != ")":
                raise ExprSyntaxError("unbalanced parenthesis", pos2,
                                      expected="')'")
            return value, False
        if kind == "end":
            raise ExprSyntaxError("unexpected end of input", pos,
                                  expected="number, name or '('")
        raise ExprSyntaxError(f"unexpected token {tok!r}", pos,
                              expected="number, name or '('")


def parse_expression(text: str, variables):
    """Parse ``text`` over the declared variables.

    Two variables (x-like first, y-like second) -> BivariatePolynomial;
    the expression must be polynomial (no variable in any denominator).
    One variable -> RationalFunction.
    """
    value = _Parser(text, variables).parse()
    if len(variables) == 2:
        num, den = value.num, value.den
        if den.degree_y() > 0 or den.degree_x() > 0:
            raise NonPolynomialExponent(
                "variables in the denominator are not allowed for a "
                "polynomial expression")
        c = den.coefficient(0, 0)
        return BivariatePolynomial(
            [row.scale(c.inverse()) for row in num.rows])
    num, den = value.num, value.den
    if num.degree_y() > 0 or den.degree_y() > 0:
        raise UndeclaredVariable("single-variable expression uses y")
    return RationalFunction(num.coefficient_y(0), den.coefficient_y(0))


def parse_bivariate(text: str, xvar: str = "x", yvar: str = "y") -> BivariatePolynomial:
    result = parse_expression(text, [xvar, yvar])
    return result


def parse_rational(text: str, var: str = "x") -> RationalFunction:
    return parse_expression(text, [var])


def parse_univariate(text: str, var: str = "x") -> UnivariatePolynomial:
    r = parse_rational(text, var)
    if not r.is_polynomial():
        raise NonPolynomialExponent("expected a polynomial, got a quotient")
    return r.num
