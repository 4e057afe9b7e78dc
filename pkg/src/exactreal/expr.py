"""A small expression language over the kernel.

Grammar::

    expr   := unary (('+' | '-') unary)*
    unary  := '-' unary | atom
    atom   := NUMBER | '(' expr ')' | 'abs' '(' expr ')'
            | 'mid' '(' expr ',' expr ')'
            | 'bigmid' '(' seq ')' | 'lim' '(' family ')'
            | 'third' | 'quarter' | 'geo' '(' signed ')'
    seq    := 'unit' | 'alt' | 'const' '(' signed ')'
    family := 'trunc' '(' signed ')' | 'geo' '(' signed ')' | 'const' '(' expr ')'

Numbers are ``a``, ``a/b`` or decimals such as ``0.125``, all exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import families
from .arith import abs_real, add, big_midpoint, midpoint, neg, rational_bounds, sub
from .cauchy import Real, constant_family, lim, rat
from .rationals import format_decimal, format_rational, parse_rational, shortest_decimal


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")

    def pointer(self) -> str:
        return f"{self.text}\n{' ' * self.position}^"


class DomainError(ParseError):
    pass


@dataclass(frozen=True)
class Rat:
    value: Fraction


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Abs:
    arg: object


@dataclass(frozen=True)
class Mid:
    left: object
    right: object


@dataclass(frozen=True)
class Seq:
    name: str
    arg: Fraction | None = None


@dataclass(frozen=True)
class Family:
    name: str
    arg: object = None


@dataclass(frozen=True)
class BigMid:
    seq: Seq


@dataclass(frozen=True)
class Lim:
    family: Family


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:/\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+(),]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None):
        tok = tok or self.peek
        return ParseError(message, tok[2], self.text)

    def expect(self, value: str):
        tok = self.take()
        if tok[1] != value or tok[0] == "num":
            found = tok[1] or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}", tok)
        return tok

    def parse(self):
        node = self.expr()
        if self.peek[0] != "end":
            raise self.error(f"unexpected {self.peek[1]!r}")
        return node

    def expr(self):
        node = self.unary()
        while self.peek[1] in ("+", "-") and self.peek[0] == "op":
            op = self.take()[1]
            rhs = self.unary()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def unary(self):
        if self.peek[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.atom()

    def signed(self) -> Fraction:
        negative = False
        if self.peek[:2] == ("op", "-"):
            self.take()
            negative = True
        tok = self.take()
        if tok[0] != "num":
            raise self.error("expected a rational literal", tok)
        value = parse_rational(tok[1])
        return -value if negative else value

    def geo_arg(self) -> Fraction:
        self.expect("(")
        pos = self.peek[2]
        q = self.signed()
        self.expect(")")
        if not abs(q) < 1:
            raise DomainError(f"geo needs |q| < 1, got {format_rational(q)}", pos, self.text)
        return q

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "num":
            try:
                return Rat(parse_rational(value))
            except ZeroDivisionError:
                raise DomainError("zero denominator", pos, self.text) from None
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "name":
            if value == "abs":
                self.expect("(")
                node = self.expr()
                self.expect(")")
                return Abs(node)
            if value == "mid":
                self.expect("(")
                left = self.expr()
                self.expect(",")
                right = self.expr()
                self.expect(")")
                return Mid(left, right)
            if value == "third":
                return Lim(Family("trunc", Fraction(1, 3)))
            if value == "quarter":
                return Lim(Family("trunc", Fraction(1, 4)))
            if value == "geo":
                return Lim(Family("geo", self.geo_arg()))
            if value == "bigmid":
                self.expect("(")
                seq = self.sequence()
                self.expect(")")
                return BigMid(seq)
            if value == "lim":
                self.expect("(")
                fam = self.family()
                self.expect(")")
                return Lim(fam)
            raise self.error(f"unknown name {value!r}", tok)
        found = value or "end of input"
        raise self.error(f"unexpected {found!r}", tok)

    def sequence(self) -> Seq:
        tok = self.take()
        if tok[0] == "name" and tok[1] in ("unit", "alt"):
            return Seq(tok[1])
        if tok[0] == "name" and tok[1] == "const":
            self.expect("(")
            c = self.signed()
            self.expect(")")
            return Seq("const", c)
        raise self.error("expected a sequence: unit, alt or const(q)", tok)

    def family(self) -> Family:
        tok = self.take()
        if tok[0] == "name" and tok[1] == "trunc":
            self.expect("(")
            q = self.signed()
            self.expect(")")
            return Family("trunc", q)
        if tok[0] == "name" and tok[1] == "geo":
            return Family("geo", self.geo_arg())
        if tok[0] == "name" and tok[1] == "const":
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return Family("const", node)
        raise self.error("expected a family: trunc(q), geo(q) or const(e)", tok)


def parse(text: str):
    return _Parser(text).parse()


def to_real(node) -> Real:
    """Build the kernel real denoted by an expression tree."""
    if isinstance(node, str):
        node = parse(node)
    if isinstance(node, Rat):
        return rat(node.value)
    if isinstance(node, Add):
        return add(to_real(node.left), to_real(node.right))
    if isinstance(node, Sub):
        return sub(to_real(node.left), to_real(node.right))
    if isinstance(node, Neg):
        return neg(to_real(node.arg))
    if isinstance(node, Abs):
        return abs_real(to_real(node.arg))
    if isinstance(node, Mid):
        return midpoint(to_real(node.left), to_real(node.right))
    if isinstance(node, BigMid):
        seq = node.seq
        if seq.name == "unit":
            return big_midpoint(families.unit_sequence(), 1, "unit")
        if seq.name == "alt":
            return big_midpoint(families.alternating_sequence(), 1, "alt")
        bound = max(abs(seq.arg), Fraction(1))
        return big_midpoint(families.constant_sequence(seq.arg), bound, f"const({format_rational(seq.arg)})")
    if isinstance(node, Lim):
        fam = node.family
        if fam.name == "trunc":
            return lim(families.truncations(fam.arg).approximation)
        if fam.name == "geo":
            return lim(families.geometric(fam.arg).approximation)
        return lim(constant_family(to_real(fam.arg)))
    raise TypeError(f"not an expression node: {node!r}")


def bits_for_digits(digits: int) -> int:
    """Smallest ``n`` with ``2**-n < 10**-digits``."""
    n = 0
    while Fraction(1, 2**n) >= Fraction(1, 10**digits):
        n += 1
    return n


def evaluate(text_or_node, digits: int) -> str:
    """A decimal within ``10**-digits`` of the expression's value.

    The decimal is the shortest one inside a rational bracket of width below
    ``10**-digits``, padded to ``digits`` places; it is not promised to be
    the correctly rounded expansion.
    """
    if digits < 1:
        raise ValueError("digits must be at least 1")
    real = to_real(text_or_node)
    bounds = rational_bounds(real, bits_for_digits(digits))
    value, places = shortest_decimal(bounds.lower, bounds.upper)
    return format_decimal(value, max(places, digits))
