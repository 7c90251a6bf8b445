"""Expressions over Weyl algebras, their tensor squares and number fields.

Grammar (see docs/grammar.md)::

    expr    := term (("+" | "-") term)*
    term    := "-" term | product
    product := power ("*" power)*
    power   := atom ("^" INT)?
    atom    := INT | GEN | "sqrt" "(" INT ")" | "inv" "(" expr ")" | "(" expr ")"
    GEN     := ("x" | "y") INT

``*`` is noncommutative.  Unary minus binds looser than ``*`` so ``-x1*x2``
means ``-(x1*x2)``; a negated factor must be parenthesised.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Protocol, Union


class ExprError(ValueError):
    """Lexical, syntax or evaluation error; ``position`` is a 0-based column."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


# --- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Gen:
    kind: str  # "x" or "y"
    index: int
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Sqrt:
    d: int


@dataclass(frozen=True)
class Inv:
    arg: "Node"


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


Node = Union[Int, Gen, Sqrt, Inv, Neg, Add, Sub, Mul, Pow]


# --- lexer -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<gen>[xy]\d+)|(?P<word>sqrt|inv)|(?P<op>[-+*^()]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        word = m.group(kind)
        # reject identifiers such as "x1a" or "sqrtx"
        end = m.end()
        if kind in ("gen", "word") and end < n and (text[end].isalnum() or text[end] == "_"):
            raise ExprError(f"unknown identifier starting {text[start:end + 1]!r}", start)
        tokens.append(Token(kind, word, start))
        pos = end
    tokens.append(Token("end", "", n))
    return tokens


# --- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.take()
        if tok.text != text:
            found = "end of input" if tok.kind == "end" else repr(tok.text)
            raise ExprError(f"expected {text!r}, found {found}", tok.pos)
        return tok

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprError(f"unexpected {tok.text!r}", tok.pos)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self) -> Node:
        if self.peek().text == "-":
            self.take()
            return Neg(self.term())
        return self.product()

    def product(self) -> Node:
        node = self.power()
        while self.peek().text == "*":
            self.take()
            node = Mul(node, self.power())
        return node

    def power(self) -> Node:
        node = self.atom()
        if self.peek().text == "^":
            self.take()
            tok = self.take()
            if tok.kind != "int":
                raise ExprError("exponent must be a non-negative integer literal", tok.pos)
            node = Pow(node, int(tok.text))
            if self.peek().text == "^":
                raise ExprError("chained exponents need parentheses", self.peek().pos)
        return node

    def atom(self) -> Node:
        tok = self.take()
        if tok.kind == "int":
            return Int(int(tok.text))
        if tok.kind == "gen":
            index = int(tok.text[1:])
            if index < 1:
                raise ExprError(f"generator index must be positive in {tok.text!r}", tok.pos)
            return Gen(tok.text[0], index, tok.pos)
        if tok.text == "sqrt":
            self.expect("(")
            sign = 1
            if self.peek().text == "-":
                self.take()
                sign = -1
            arg = self.take()
            if arg.kind != "int":
                raise ExprError("sqrt takes an integer literal", arg.pos)
            self.expect(")")
            return Sqrt(sign * int(arg.text))
        if tok.text == "inv":
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Inv(inner)
        if tok.text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ExprError(f"expected a number, generator or '(' but found {found}", tok.pos)


def parse(text: str) -> Node:
    return _Parser(text).parse()


# --- printer -----------------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Neg: 2, Mul: 3, Pow: 4}


def _prec(node: Node) -> int:
    return _PREC.get(type(node), 5)


def to_text(node: Node) -> str:
    """Canonical text; ``parse(to_text(t)) == t`` for every tree ``t``."""
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, Gen):
        return f"{node.kind}{node.index}"
    if isinstance(node, Sqrt):
        return f"sqrt({node.d})"
    if isinstance(node, Inv):
        return f"inv({to_text(node.arg)})"
    if isinstance(node, Neg):
        inner = to_text(node.arg)
        return f"-{inner}" if _prec(node.arg) >= 2 else f"-({inner})"
    if isinstance(node, (Add, Sub)):
        left = to_text(node.left)
        right = to_text(node.right)
        if _prec(node.right) <= 1:
            right = f"({right})"
        op = "+" if isinstance(node, Add) else "-"
        return f"{left} {op} {right}"
    if isinstance(node, Mul):
        left = to_text(node.left)
        right = to_text(node.right)
        if _prec(node.left) < 3:
            left = f"({left})"
        if _prec(node.right) <= 3:
            right = f"({right})"
        return f"{left}*{right}"
    if isinstance(node, Pow):
        base = to_text(node.base)
        if _prec(node.base) <= 4:
            base = f"({base})"
        return f"{base}^{node.exp}"
    raise TypeError(f"not an expression node: {node!r}")


# --- evaluation ----------------------------------------------------------------


class Environment(Protocol):
    def scalar(self, value: int): ...

    def sqrt(self, d: int): ...

    def generator(self, kind: str, index: int): ...

    def as_scalar(self, value):
        """Raw field value if ``value`` is a scalar multiple of 1, else None."""

    def from_field(self, raw): ...

    def invert(self, raw): ...


def evaluate(node: Node | str, env) -> object:
    if isinstance(node, str):
        node = parse(node)
    return _eval(node, env)


def _eval(node: Node, env):
    if isinstance(node, Int):
        return env.scalar(node.value)
    if isinstance(node, Gen):
        try:
            return env.generator(node.kind, node.index)
        except ExprError as exc:
            if exc.position is None and node.pos is not None:
                raise ExprError(str(exc), node.pos) from None
            raise
    if isinstance(node, Sqrt):
        return env.sqrt(node.d)
    if isinstance(node, Inv):
        value = _eval(node.arg, env)
        raw = env.as_scalar(value)
        if raw is None:
            raise ExprError(f"inv() of a non-scalar: {to_text(node.arg)}")
        return env.from_field(env.invert(raw))
    if isinstance(node, Neg):
        return -_eval(node.arg, env)
    if isinstance(node, Add):
        return _eval(node.left, env) + _eval(node.right, env)
    if isinstance(node, Sub):
        return _eval(node.left, env) - _eval(node.right, env)
    if isinstance(node, Mul):
        return _eval(node.left, env) * _eval(node.right, env)
    if isinstance(node, Pow):
        return _eval(node.base, env) ** node.exp
    raise TypeError(f"not an expression node: {node!r}")


def generators_used(node: Node) -> set[tuple[str, int]]:
    if isinstance(node, Gen):
        return {(node.kind, node.index)}
    out: set = set()
    for child in getattr(node, "__dataclass_fields__", {}):
        value = getattr(node, child)
        if isinstance(value, (Int, Gen, Sqrt, Inv, Neg, Add, Sub, Mul, Pow)):
            out |= generators_used(value)
    return out
