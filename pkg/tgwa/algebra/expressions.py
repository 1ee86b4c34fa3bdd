"""
Recursive-descent parser for scalar, polynomial and rational expressions

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := ('-' | '+') unary | power
    power := atom ('^' ['-'] INT)?
    atom  := INT | 'zeta' '(' INT ')' | NAME | '(' expr ')'

The parser evaluates as it goes. Values only need the arithmetic operators,
so the same grammar serves Scalars, BasePolys and RationalFunctions.
"""

import re
from typing import Any, Callable, Iterator, List, Mapping, Set, Tuple

from tgwa.algebra.scalars import CycloField, Scalar
from tgwa.core.exceptions import DivisionByZero, ExpressionSyntaxError, TGWAError

_TOKEN = re.compile(r"(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()])")
_ZETA = re.compile(r"zeta\s*\(\s*(\d+)\s*\)")

Token = Tuple[str, str, int]


def _tokenize(text: str) -> Iterator[Token]:
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", text, pos + 1)
        kind = match.lastgroup
        yield kind, match.group(kind), pos + 1
        pos = match.end()


class _Parser:
    def __init__(self, text: str, field: CycloField, variables: Mapping[str, Any],
                 lift: Callable[[Scalar], Any]):
        self.text = text
        self.field = field
        self.variables = variables
        self.lift = lift
        self.tokens: List[Token] = list(_tokenize(text))
        self.pos = 0

    def error(self, message: str, column: int = None):
        if column is None:
            column = self.tokens[self.pos][2] if self.pos < len(self.tokens) else len(self.text) + 1
        return ExpressionSyntaxError(message, self.text, column)

    def peek(self) -> Token:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return ("end", "", len(self.text) + 1)

    def take(self, value: str = None, kind: str = None) -> Token:
        token = self.peek()
        if (value is not None and token[1] != value) or (kind is not None and token[0] != kind):
            expected = repr(value) if value is not None else kind
            found = "end of input" if token[0] == "end" else repr(token[1])
            raise self.error(f"expected {expected}, found {found}")
        self.pos += 1
        return token

    def parse(self):
        if not self.tokens:
            raise self.error("empty expression", 1)
        value = self.expr()
        if self.pos != len(self.tokens):
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, column = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                try:
                    value = value / rhs
                except DivisionByZero:
                    raise self.error("division by zero", column)
                except TGWAError as e:
                    raise self.error(str(e), column)
        return value

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            _, _, column = self.take()
            negative = False
            if self.peek()[1] == "-":
                self.take()
                negative = True
            exponent = int(self.take(kind="int")[1])
            try:
                return base ** (-exponent if negative else exponent)
            except DivisionByZero:
                raise self.error("negative power of zero", column)
            except TGWAError as e:
                raise self.error(str(e), column)
        return base

    def atom(self):
        kind, value, column = self.peek()
        if kind == "int":
            self.take()
            return self.lift(self.field.from_rational(int(value)))
        if kind == "name":
            self.take()
            if value == "zeta":
                self.take("(")
                order = int(self.take(kind="int")[1])
                self.take(")")
                try:
                    return self.lift(self.field.root_of_unity(order))
                except TGWAError as e:
                    raise self.error(str(e), column)
            if value in self.variables:
                return self.variables[value]
            raise self.error(f"unknown name {value!r}", column)
        if value == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {value!r}", column)


def parse_expression(text: str, field: CycloField, variables: Mapping[str, Any] = None,
                     lift: Callable[[Scalar], Any] = None):
    """Evaluate `text` with the given variable bindings

    `lift` turns Scalars into values of the target domain (identity for
    plain scalar expressions).
    """
    return _Parser(str(text), field, variables or {}, lift or (lambda s: s)).parse()


def parse_scalar(text: str, field: CycloField) -> Scalar:
    return parse_expression(text, field)


def zeta_orders(text: str) -> Set[int]:
    """Orders N of every zeta(N) literal in `text`"""
    return {int(n) for n in _ZETA.findall(str(text))}
