"""Exact rational arithmetic.

Rationals are :class:`fractions.Fraction` values, which are always stored in
lowest terms with a positive denominator, so value equality and
representation equality coincide.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction

_LITERAL = re.compile(r"^\s*([+-]?)(\d+)(?:\.(\d+))?(?:/(\d+))?\s*$")


class PositiveRational(Fraction):
    """A rational known to be strictly positive (an epsilon, delta, ...)."""

    __slots__ = ()

    def __new__(cls, numerator=0, denominator=None):
        self = super().__new__(cls, numerator, denominator)
        if self <= 0:
            raise ValueError(f"expected a positive rational, got {Fraction(self)}")
        return self


def positive(q) -> Fraction:
    """Validate that ``q`` is a positive rational and return it as a Fraction."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"expected a positive rational, got {q}")
    return q


def normalize(n: int, d: int) -> Fraction:
    """Canonical reduced form of n/d with a positive denominator."""
    if d == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(n, d)


def qadd(a: Fraction, b: Fraction) -> Fraction:
    return a + b


def qsub(a: Fraction, b: Fraction) -> Fraction:
    return a - b


def qneg(a: Fraction) -> Fraction:
    return -a


def qabs(a: Fraction) -> Fraction:
    return abs(a)


def qcmp(a: Fraction, b: Fraction) -> int:
    """Three-way comparison: -1, 0 or 1."""
    return (a > b) - (a < b)


def parse_rational(text: str) -> Fraction:
    """Parse ``n``, ``n/d``, ``n.ddd`` or ``n.ddd/d`` exactly.

    Decimal literals are converted without rounding: ``0.1`` is ``1/10``.
    """
    m = _LITERAL.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, whole, frac, den = m.groups()
    value = Fraction(int(whole))
    if frac:
        value += Fraction(int(frac), 10 ** len(frac))
    if den is not None:
        if int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        value /= int(den)
    return -value if sign == "-" else value


def format_rational(q: Fraction) -> str:
    """Text form ``n/d``, with ``/d`` omitted for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def shortest_decimal(lo: Fraction, hi: Fraction) -> tuple[Fraction, int]:
    """The decimal with fewest fractional digits in the closed interval [lo, hi].

    Returns ``(value, digits)``. Requires ``lo <= hi``.
    """
    if lo > hi:
        raise ValueError("empty interval")
    k = 0
    while True:
        scale = 10**k
        c = -((-lo.numerator * scale) // lo.denominator)  # ceil(lo * 10**k)
        if Fraction(c, scale) <= hi:
            return Fraction(c, scale), k
        k += 1


def format_decimal(q: Fraction, digits: int) -> str:
    """Exact decimal rendering of ``q``; ``q * 10**digits`` must be an integer."""
    scaled = q * 10**digits
    if scaled.denominator != 1:
        raise ValueError(f"{q} has more than {digits} decimal digits")
    n = scaled.numerator
    sign = "-" if n < 0 else ""
    n = abs(n)
    if digits == 0:
        return f"{sign}{n}"
    whole, frac = divmod(n, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"
