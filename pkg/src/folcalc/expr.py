"""Parser for the polynomial expression grammar used by job files and the CLI.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := ('+' | '-') factor | power
    power   := atom ('^' INT)?
    atom    := NUMBER | NAME | '(' expr ')'
    NUMBER  := INT | INT '/' INT
    NAME    := [a-z][a-z0-9]*

``/`` only ever joins two integer literals into a rational; there is no
division of expressions.
"""

import re
from fractions import Fraction

from .algebra import MPoly, format_poly
from .errors import ExpressionSyntaxError, UnknownVariable

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<name>[a-z][a-z0-9]*)|(?P<op>[-+*^()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExpressionSyntaxError(f"unexpected character {text[start]!r}", start)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, variables):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = variables

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, tok, what):
        kind, value, pos = tok
        if kind == "end":
            raise ExpressionSyntaxError(f"unexpected end of input, expected {what}", pos)
        raise ExpressionSyntaxError(f"unexpected {value!r}, expected {what}", pos)

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            inner = self.factor()
            return inner if tok[1] == "+" else -inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num" or "/" in tok[1]:
                self.fail(tok, "a nonnegative integer exponent")
            return base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "num":
            return MPoly.const(Fraction(value.replace(" ", "")), self.variables)
        if kind == "name":
            if value not in self.variables:
                raise UnknownVariable(f"unknown variable {value!r} at offset {pos}")
            return MPoly.gen(value, self.variables)
        if kind == "op" and value == "(":
            inner = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                self.fail(close, "')'")
            return inner
        self.fail(tok, "a number, variable or '('")


def expression_variables(text):
    """Variable names used in ``text``, in order of first appearance."""
    seen = []
    for kind, value, _ in _tokenize(text):
        if kind == "name" and value not in seen:
            seen.append(value)
    return seen


def parse_expression(text, variables=None):
    """Parse ``text`` into an :class:`MPoly` over ``variables``.

    Without ``variables`` the polynomial lives over the names it uses,
    sorted alphabetically.
    """
    if variables is None:
        variables = sorted(expression_variables(text))
    variables = tuple(variables)
    parser = _Parser(text, variables)
    value = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        parser.fail(tok, "an operator or end of input")
    return value


def print_expression(poly):
    return format_poly(poly)
