"""Exact real arithmetic over Cauchy approximations with explicit moduli."""

from .arith import (
    Bounds,
    Side,
    Truth,
    abs_real,
    add,
    big_midpoint,
    clamp,
    interval_hom,
    located,
    lt_q,
    lt_real,
    midpoint,
    neg,
    rational_bounds,
    sub,
)
from .cauchy import (
    CauchyApproximation,
    Closeness,
    ClosenessVerdict,
    EqCheck,
    Real,
    close,
    eq_check,
    lim,
    rat,
)
from .expr import DomainError, ParseError, evaluate, parse, to_real
from .report import Entry, Report

__all__ = [
    "Bounds", "CauchyApproximation", "Closeness", "ClosenessVerdict", "DomainError", "Entry", "EqCheck",
    "ParseError", "Real", "Report", "Side", "Truth", "abs_real", "add", "big_midpoint", "clamp", "close",
    "eq_check", "evaluate", "interval_hom", "located", "lim", "lt_q", "lt_real", "midpoint", "neg", "parse",
    "rat", "rational_bounds", "sub", "to_real",
]
