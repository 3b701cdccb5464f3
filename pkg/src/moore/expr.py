"""A small expression language over intervals.

Grammar, loosest binding first::

    expr    := sum (('&' | '|') sum)*
    sum     := product (('+' | '-') product)*
    product := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := atom (('^' | '**') integer)?
    atom    := literal | number | name | name '(' args ')' | '(' expr ')'

Literals use the interval text grammar (``[1, 2]``, ``[0x1p-3]``, ``[]``);
a bare number stands for its tightest enclosure.  ``&`` intersects and
``|`` takes the hull.  Compiled expressions evaluate on intervals and on
AD values alike.

>>> f = compile_expr("x^2 - 2")
>>> r = f(x=Interval(1, 2))
>>> (r.lo, r.hi)
(-1.0, 2.0)
"""

from __future__ import annotations

import re

from . import functions as fn
from .core import Interval, hull, intersect, sqr
from .endpoints import BINARY64, EndpointKind, parse_kind
from .errors import ParseError
from .textio import parse_interval

__all__ = ["Expr", "compile_expr", "evaluate"]

_TOKEN = re.compile(
    r"\s*(?:(?P<lit>\[[^\]]*\])|(?P<num>0[xX][0-9a-fA-F.]+[pP][+-]?\d+|(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]\w*)|(?P<op>\*\*|[-+*/^&|(),]))"
)

_UNARY = {name: getattr(fn, name) for name in fn.FUNCTIONS + fn.HYPERBOLIC}
_UNARY["sqr"] = lambda x: sqr(x) if isinstance(x, Interval) else x.sqr()
_UNARY["abs"] = abs


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at offset {pos} in {text!r}")
        pos = m.end()
        out.append((m.lastgroup, m.group(m.lastgroup)))
    return out


class _Parser:
    def __init__(self, text: str, kind: EndpointKind):
        self.text = text
        self.kind = kind
        self.toks = _tokens(text)
        self.i = 0
        self.names: set[str] = set()

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value: str | None = None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            want = repr(value) if value else "more input"
            raise ParseError(f"expected {want} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"unexpected {self.peek()[1]!r} in {self.text!r}")
        return node

    def expr(self):
        node = self.sum()
        while self.peek()[1] in ("&", "|"):
            op = self.take()[1]
            node = (op, node, self.sum())
        return node

    def sum(self):
        node = self.product()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            node = (op, node, self.product())
        return node

    def product(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            node = (op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[1] in ("-", "+"):
            op = self.take()[1]
            inner = self.unary()
            return ("neg", inner) if op == "-" else inner
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            kind, tok = self.take()
            if kind != "num" or not tok.isdigit():
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            node = ("pow", node, sign * int(tok))
        return node

    def atom(self):
        kind, tok = self.take()
        if kind == "lit":
            return ("const", parse_interval(tok, self.kind))
        if kind == "num":
            return ("const", parse_interval(f"[{tok}]", self.kind))
        if kind == "name":
            if self.peek()[1] == "(":
                self.take("(")
                args = [self.expr()]
                while self.peek()[1] == ",":
                    self.take(",")
                    args.append(self.expr())
                self.take(")")
                return self.call(tok, args)
            if tok == "pi":
                return ("const", fn.pi_interval(self.kind))
            self.names.add(tok)
            return ("var", tok)
        if tok == "(":
            node = self.expr()
            self.take(")")
            return node
        raise ParseError(f"unexpected {tok!r} in {self.text!r}")

    def call(self, name: str, args: list):
        if name in _UNARY:
            if len(args) != 1:
                raise ParseError(f"{name} takes one argument")
            return ("call", name, args[0])
        if name in ("hull", "intersect"):
            if len(args) != 2:
                raise ParseError(f"{name} takes two arguments")
            return ("|" if name == "hull" else "&", args[0], args[1])
        if name == "pown":
            if len(args) != 2 or args[1][0] != "const" or not args[1][1].is_point():
                raise ParseError("pown takes an expression and an integer")
            n = args[1][1].lo
            if n != int(n):
                raise ParseError("pown exponent must be an integer")
            return ("pow", args[0], int(n))
        raise ParseError(f"unknown function {name!r}")


def _set_op(op: str, a, b):
    if not (isinstance(a, Interval) and isinstance(b, Interval)):
        raise TypeError(f"'{op}' needs plain intervals")
    return intersect(a, b) if op == "&" else hull(a, b)


def _eval(node, env: dict):
    tag = node[0]
    if tag == "const":
        return node[1]
    if tag == "var":
        return env[node[1]]
    if tag == "neg":
        return -_eval(node[1], env)
    if tag == "call":
        return _UNARY[node[1]](_eval(node[2], env))
    if tag == "pow":
        base = _eval(node[1], env)
        n = node[2]
        if n < 0:
            return 1 / base ** (-n)
        return base ** n
    a, b = _eval(node[1], env), _eval(node[2], env)
    if tag == "+":
        return a + b
    if tag == "-":
        return a - b
    if tag == "*":
        return a * b
    if tag == "/":
        return a / b
    return _set_op(tag, a, b)


class Expr:
    """A parsed expression; call with keyword values for its variables."""

    def __init__(self, text: str, kind: EndpointKind | str = BINARY64):
        p = _Parser(text, parse_kind(kind))
        self.text = text
        self.kind = p.kind
        self._tree = p.parse()
        self.variables = tuple(sorted(p.names))

    def __call__(self, *args, **env):
        if args:
            if len(args) != 1 or len(self.variables) > 1:
                raise TypeError("pass variables by name")
            if self.variables:
                env[self.variables[0]] = args[0]
        missing = [v for v in self.variables if v not in env]
        if missing:
            raise NameError(f"unbound variables: {', '.join(missing)}")
        return _eval(self._tree, env)

    def __repr__(self) -> str:
        return f"Expr({self.text!r})"


def compile_expr(text: str, kind: EndpointKind | str = BINARY64) -> Expr:
    return Expr(text, kind)


def evaluate(text: str, kind: EndpointKind | str = BINARY64, **env) -> Interval:
    return Expr(text, kind)(**env)

