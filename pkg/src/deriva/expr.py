"""A small expression language for one-variable functions.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)*
    atom   := VAR | const | '(' expr ')' | '-' factor

``const`` uses the carrier's element encoding (``2``, ``1,2`` for GF(p^k),
``-3/4`` for Q).  There is no division.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from typing import Callable

from .errors import ElementError, ExprSyntaxError
from .ring import Ring, RingElement

__all__ = ["ExprFunction", "parse_expr", "parse_ast", "evaluate"]


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Const:
    value: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Neg:
    operand: object


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:,\d+)*(?:/\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*^()]))")


def _tokenize(text: str, var: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[start]!r}", start)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "name" and value != var:
            raise ExprSyntaxError(f"unknown name {value!r}", start)
        out.append((kind, value, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, var: str, make_const: Callable[[str, int], object]):
        self.tokens = _tokenize(text, var)
        self.i = 0
        self.make_const = make_const

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, value, pos = self.take()
        if kind != "op" or value != op:
            raise ExprSyntaxError(f"expected {op!r}", pos)

    def parse(self):
        node = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {value!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        while self.peek()[:2] == ("op", "^"):
            self.take()
            kind, value, pos = self.take()
            if kind != "num" or not value.isdigit():
                raise ExprSyntaxError("expected a natural-number exponent", pos)
            node = Pow(node, int(value))
        return node

    def atom(self):
        kind, value, pos = self.take()
        if kind == "name":
            return Var()
        if kind == "num":
            return Const(self.make_const(value, pos))
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "op" and value == "-":
            return Neg(self.factor())
        raise ExprSyntaxError("expected an operand" if kind == "end" else f"unexpected {value!r}", pos)


def parse_ast(text: str, make_const: Callable[[str], object], var: str = "x"):
    """Parse ``text`` into an AST; ``make_const`` converts constant literals."""

    def const(literal, pos):
        try:
            return make_const(literal)
        except ElementError as exc:
            raise ElementError(f"{exc} (at position {pos})", position=pos) from None

    return _Parser(text, var, const).parse()


class _PyOps:
    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    neg = staticmethod(operator.neg)
    pow = staticmethod(operator.pow)


def evaluate(node, x, ops=_PyOps, const=lambda v: v):
    """Evaluate an AST at ``x``.

    ``ops`` supplies ``add/sub/mul/neg/pow``; a :class:`~deriva.ring.Ring`
    works directly on canonical indices (scalar or numpy array).
    """
    if isinstance(node, Var):
        return x
    if isinstance(node, Const):
        return const(node.value)
    if isinstance(node, Neg):
        return ops.neg(evaluate(node.operand, x, ops, const))
    if isinstance(node, Pow):
        return ops.pow(evaluate(node.base, x, ops, const), node.exponent)
    left = evaluate(node.left, x, ops, const)
    right = evaluate(node.right, x, ops, const)
    return {"+": ops.add, "-": ops.sub, "*": ops.mul}[node.op](left, right)


@dataclass(frozen=True)
class ExprFunction:
    """A parsed function of ``x`` with constants in ``ring``."""

    text: str
    ring: Ring
    ast: object

    def __call__(self, x: RingElement) -> RingElement:
        if self.ring.kind == "Q":
            return evaluate(self.ast, x)
        return self.ring.from_index(int(evaluate(self.ast, x.value, self.ring, lambda c: c.value)))

    def __str__(self) -> str:
        return self.text


def parse_expr(text: str, ring: Ring) -> ExprFunction:
    """Parse a function of ``x`` over ``ring``.

    >>> from deriva.ring import parse_ring_spec
    >>> f = parse_expr("2*x + 1", parse_ring_spec("GF:3"))
    >>> str(f(parse_ring_spec("GF:3")(2)))
    '2'
    """
    return ExprFunction(text, ring, parse_ast(text, ring.parse_element))
