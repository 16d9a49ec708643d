"""Expression language for characteristic classes.

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := name | call '(' expr ')' | '(' expr ')' | uint
    call   := 'b' | 'bT' | 'H' | 'HT'

Names are ``th``, ``c<i>``, ``p<2i>`` and ``e<n>``.  Parenthesized groups are
kept as nested nodes, so printing and reparsing gives back the same tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

CALLS = ("b", "bT", "H", "HT")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"syntax error at byte {offset}: {message}")
        self.offset = offset


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Node"


@dataclass(frozen=True)
class Power:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Product:
    factors: tuple["Node", ...]


@dataclass(frozen=True)
class Sum:
    terms: tuple[tuple[int, "Node"], ...]


Node = Union[Int, Name, Call, Power, Product, Sum]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*^()]))")
_NAME = re.compile(r"^(th|c\d+|p\d+|e\d+)$")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    for i, ch in enumerate(text):
        if not ch.isascii():
            raise ParseError(f"unexpected character {ch!r}", len(text[:i].encode()))
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int | None):
        self.tokens = _tokenize(text)
        self.i = 0
        self.n = n

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, text, pos = self.take()
        if text != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {text or 'end of input'!r}", pos)

    def expr(self) -> Node:
        terms = []
        sign = 1
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.take()
            sign = -1
        terms.append((sign, self.term()))
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                terms.append((1 if text == "+" else -1, self.term()))
            else:
                break
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while self.peek()[:2] == ("op", "*"):
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Node:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, text, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", pos)
            return Power(base, int(text))
        return base

    def atom(self) -> Node:
        kind, text, pos = self.take()
        if kind == "int":
            return Int(int(text))
        if kind == "op" and text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "name":
            if self.peek()[:2] == ("op", "(") and text in CALLS:
                self.take()
                arg = self.expr()
                self.expect(")")
                return Call(text, arg)
            self.check_name(text, pos)
            return Name(text)
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos)

    def check_name(self, name: str, pos: int) -> None:
        if not _NAME.match(name):
            raise ParseError(f"unknown generator {name!r}", pos)
        if self.n is not None and not name_allowed(name, self.n):
            raise ParseError(f"unknown generator {name!r} for n={self.n}", pos)


def name_allowed(name: str, n: int) -> bool:
    if name == "th":
        return True
    k = int(name[1:])
    if name[0] == "c":
        return 1 <= k <= n
    if name[0] == "p":
        return k % 2 == 0 and 2 <= k <= 2 * ((n - 1) // 2)
    return k == n


def parse_expr(text: str, n: int | None = None) -> Node:
    p = _Parser(text, n)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", 0)
    node = p.expr()
    kind, value, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {value!r}", pos)
    return node


def to_string(node: Node) -> str:
    """Canonical rendering; ``parse_expr(to_string(t)) == t``."""
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Call):
        return f"{node.fn}({to_string(node.arg)})"
    if isinstance(node, Power):
        base = to_string(node.base)
        if isinstance(node.base, (Sum, Product, Power)):
            base = f"({base})"
        return f"{base}^{node.exp}"
    if isinstance(node, Product):
        return "*".join(f"({to_string(f)})" if isinstance(f, (Sum, Product)) else to_string(f) for f in node.factors)
    if isinstance(node, Sum):
        out = []
        for k, (sign, t) in enumerate(node.terms):
            body = f"({to_string(t)})" if isinstance(t, Sum) else to_string(t)
            if k == 0:
                out.append(("-" if sign < 0 else "") + body)
            else:
                out.append((" - " if sign < 0 else " + ") + body)
        return "".join(out)
    raise TypeError(f"not an expression node: {node!r}")
