"""The group-expression language of the command line.

Grammar (whitespace-insensitive):

    expr    := term (("x" | "×") term)*
    term    := atom ("^" int)?
    atom    := primary ("wr" primary)*
    primary := "C"int | "S"int | "A"int | "D"int
             | "G(" int "," int "," int ")" | "(" expr ")"

"D6" is the dihedral group of order 12.  Wreath products are restricted to
a cyclic base and a symmetric top.  parse -> text -> parse round-trips to
an equal AST.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import construct
from .errors import ExprError


@dataclass(frozen=True)
class Cyclic:
    m: int


@dataclass(frozen=True)
class Symmetric:
    n: int


@dataclass(frozen=True)
class Alternating:
    n: int


@dataclass(frozen=True)
class Dihedral:
    n: int


@dataclass(frozen=True)
class Reflection:
    m: int
    p: int
    n: int


@dataclass(frozen=True)
class Wreath:
    base: "GroupExpr"
    top: "GroupExpr"


@dataclass(frozen=True)
class Product:
    parts: tuple


@dataclass(frozen=True)
class Power:
    base: "GroupExpr"
    k: int


GroupExpr = (Cyclic, Symmetric, Alternating, Dihedral, Reflection, Wreath, Product, Power)

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<atom>[CSAD]\d+)
  | (?P<g>G)
  | (?P<wr>wr)
  | (?P<times>[x×])
  | (?P<caret>\^)
  | (?P<lp>\()
  | (?P<rp>\))
  | (?P<comma>,)
  | (?P<int>\d+)
""", re.VERBOSE)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ExprError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind, what):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            shown = tok[1] or "end of input"
            raise ExprError(f"expected {what}, found {shown!r}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        parts = [self.term()]
        while self.peek()[0] == "times":
            self.i += 1
            parts.append(self.term())
        if len(parts) == 1:
            return parts[0]
        return Product(tuple(parts))

    def term(self):
        a = self.atom()
        if self.peek()[0] == "caret":
            self.i += 1
            tok = self.take("int", "an integer exponent")
            k = int(tok[1])
            if k < 1:
                raise ExprError("power must be >= 1", tok[2])
            return Power(a, k)
        return a

    def atom(self):
        a = self.primary()
        while self.peek()[0] == "wr":
            tok = self.peek()
            self.i += 1
            b = self.primary()
            if not isinstance(a, Cyclic):
                raise ExprError("wreath base must be a cyclic group Cm", tok[2])
            if not isinstance(b, Symmetric):
                raise ExprError("wreath top must be a symmetric group Sn", tok[2])
            if a.m < 2 or b.n < 2:
                raise ExprError("wreath product needs m >= 2 and n >= 2", tok[2])
            a = Wreath(a, b)
        return a

    def primary(self):
        kind, text, pos = self.peek()
        if kind == "atom":
            self.i += 1
            letter, value = text[0], int(text[1:])
            if value < 1:
                raise ExprError(f"parameter must be positive in {text!r}", pos)
            if letter == "C":
                return Cyclic(value)
            if letter == "S":
                return Symmetric(value)
            if letter == "A":
                if value < 3:
                    raise ExprError(f"A{value} is degenerate; need n >= 3", pos)
                return Alternating(value)
            if value < 3:
                raise ExprError(f"D{value} is degenerate; need n >= 3 (D{value} "
                                "would not be the order-%d dihedral group)" % (2 * value), pos)
            return Dihedral(value)
        if kind == "g":
            self.i += 1
            self.take("lp", '"("')
            m = int(self.take("int", "an integer")[1])
            self.take("comma", '","')
            p = int(self.take("int", "an integer")[1])
            self.take("comma", '","')
            n = int(self.take("int", "an integer")[1])
            rp = self.take("rp", '")"')
            if m < 2 or n < 2 or p < 1:
                raise ExprError(f"G({m},{p},{n}) needs m >= 2, n >= 2, p >= 1", pos)
            if m % p != 0:
                raise ExprError(f"G({m},{p},{n}): p = {p} does not divide m = {m}", pos)
            _ = rp
            return Reflection(m, p, n)
        if kind == "lp":
            self.i += 1
            inner = self.expr()
            self.take("rp", '")"')
            return inner
        shown = text or "end of input"
        raise ExprError(f"expected a group atom (C/S/A/D/G(...)/parenthesis), found {shown!r}", pos)


def parse_group(text):
    """Parse a group expression, reporting position and expectation on error."""
    parser = _Parser(text)
    e = parser.expr()
    parser.take("end", "end of input")
    return e


def to_text(expr):
    """Canonical text form; parse(to_text(e)) == e."""
    if isinstance(expr, Cyclic):
        return f"C{expr.m}"
    if isinstance(expr, Symmetric):
        return f"S{expr.n}"
    if isinstance(expr, Alternating):
        return f"A{expr.n}"
    if isinstance(expr, Dihedral):
        return f"D{expr.n}"
    if isinstance(expr, Reflection):
        return f"G({expr.m},{expr.p},{expr.n})"
    if isinstance(expr, Wreath):
        return f"{to_text(expr.base)} wr {to_text(expr.top)}"
    if isinstance(expr, Power):
        base = to_text(expr.base)
        if isinstance(expr.base, Product):
            base = f"({base})"
        return f"{base}^{expr.k}"
    if isinstance(expr, Product):
        return " x ".join(
            f"({to_text(p)})" if isinstance(p, Product) else to_text(p)
            for p in expr.parts)
    raise TypeError(f"not a group expression: {expr!r}")


def build(expr):
    """Construct the permutation group named by an expression (or its text)."""
    if isinstance(expr, str):
        expr = parse_group(expr)
    G = _build(expr)
    G.meta["expr"] = to_text(expr)
    return G


def _build(expr):
    if isinstance(expr, Cyclic):
        return construct.cyclic(expr.m)
    if isinstance(expr, Symmetric):
        return construct.symmetric(expr.n)
    if isinstance(expr, Alternating):
        return construct.alternating(expr.n)
    if isinstance(expr, Dihedral):
        return construct.dihedral(expr.n)
    if isinstance(expr, Reflection):
        return construct.reflection_group(expr.m, expr.p, expr.n)
    if isinstance(expr, Wreath):
        return construct.wreath_cyclic(expr.base.m, expr.top.n)
    if isinstance(expr, Power):
        G = _build(expr.base)
        out = G
        for _ in range(expr.k - 1):
            out = construct.direct_product(out, _build(expr.base))
        return out
    if isinstance(expr, Product):
        parts = [_build(p) for p in expr.parts]
        out = parts[0]
        for p in parts[1:]:
            out = construct.direct_product(out, p)
        return out
    raise TypeError(f"not a group expression: {expr!r}")
