"""Order, arithmetic and midpoint operators on :class:`~exactreal.cauchy.Real`.

Every operation maps approximation functions to approximation functions and
preserves the ``|u(d) - u(e)| <= d + e`` modulus. Cut predicates such as
``q < u`` are semi-decided from approximations rather than stored.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cauchy import (
    DEFAULT_BUDGET,
    CauchyApproximation,
    Derived,
    Real,
    eq_check,
    lim,
    rat,
)
from .rationals import format_rational, positive
from .report import Report

def add(u: Real, v: Real) -> Real:
    p, q = u.rational, v.rational
    if p is not None and q is not None:
        return rat(p + q)
    return Real(lambda eps: u.approximate(eps / 2) + v.approximate(eps / 2), Derived("add", (u, v)))


def neg(u: Real) -> Real:
    if u.rational is not None:
        return rat(-u.rational)
    return Real(lambda eps: -u.approximate(eps), Derived("neg", (u,)))


def sub(u: Real, v: Real) -> Real:
    return add(u, neg(v))


def abs_real(u: Real) -> Real:
    # ||a| - |b|| <= |a - b| keeps the modulus
    if u.rational is not None:
        return rat(abs(u.rational))
    return Real(lambda eps: abs(u.approximate(eps)), Derived("abs", (u,)))


def midpoint(u: Real, v: Real) -> Real:
    p, q = u.rational, v.rational
    if p is not None and q is not None:
        return rat((p + q) / 2)
    return Real(lambda eps: (u.approximate(eps) + v.approximate(eps)) / 2, Derived("mid", (u, v)))


def clamp(u: Real, lo, hi) -> Real:
    """``min(max(u, lo), hi)``; 1-Lipschitz, so the modulus survives."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty clamp range")
    if u.rational is not None:
        return rat(min(max(u.rational, lo), hi))
    return Real(lambda eps: min(max(u.approximate(eps), lo), hi),
                Derived("clamp", (u, rat(lo), rat(hi))))


def _scale_pow2(u: Real, k: int) -> Real:
    """``2**k * u``; precision is requested ``2**k`` times finer."""
    factor = Fraction(2) ** k
    if u.rational is not None:
        return rat(u.rational * factor)
    return Real(lambda eps: factor * u.approximate(eps / factor), Derived(f"scale2^{k}", (u,)))


class Truth(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNDECIDED = "undecided"


def lt_q(q, u: Real, budget: int = DEFAULT_BUDGET) -> Truth:
    """Semi-decide ``q < u`` by probing at delta = 1, 1/2, 1/4, ...

    A rational ``u`` is read exactly; ``q < rat(q)`` stays UNDECIDED since
    FAILS needs a strict overshoot.
    """
    q = Fraction(q)
    delta = Fraction(1)
    exact = u.rational is not None
    for _ in range(budget):
        a = u.approximate(delta)
        margin = 0 if exact else delta
        if a - margin > q:
            return Truth.HOLDS
        if a + margin < q:
            return Truth.FAILS
        delta /= 2
    return Truth.UNDECIDED


def lt_q_upper(u: Real, r, budget: int = DEFAULT_BUDGET) -> Truth:
    """Semi-decide ``u < r``."""
    r = Fraction(r)
    delta = Fraction(1)
    exact = u.rational is not None
    for _ in range(budget):
        a = u.approximate(delta)
        margin = 0 if exact else delta
        if a + margin < r:
            return Truth.HOLDS
        if a - margin > r:
            return Truth.FAILS
        delta /= 2
    return Truth.UNDECIDED


class Side(enum.Enum):
    LEFT = "left"    # q < u
    RIGHT = "right"  # u < r


def located(q, r, u: Real) -> Side:
    """Decide one true disjunct of ``q < u or u < r`` for ``q < r``.

    One probe at delta = (r - q)/4: if ``a - delta > q`` then ``q < u``;
    otherwise ``u <= a + delta <= q + 2*delta < r``.
    """
    q, r = Fraction(q), Fraction(r)
    if not q < r:
        raise ValueError(f"located needs q < r, got {q} >= {r}")
    delta = (r - q) / 4
    if u.approximate(delta) - delta > q:
        return Side.LEFT
    return Side.RIGHT


@dataclass(frozen=True)
class Bounds:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError("bounds need lower < upper")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, x) -> bool:
        return self.lower < x < self.upper

    def __str__(self) -> str:
        return f"({format_rational(self.lower)}, {format_rational(self.upper)})"


def initial_bounds(u: Real) -> tuple[Fraction, Fraction]:
    a = u.approximate(1)
    return a - 2, a + 2


def rational_bounds(u: Real, n: int, initial: tuple | None = None) -> Bounds:
    """Rationals ``s < u < t`` with ``t - s < 2**-n``.

    Lays a grid ``q = q_0 < ... < q_{m+1} = r`` with steps below
    ``2**-(n+1)`` across an initial bracket and takes the first ``i`` for
    which ``located(q_i, q_{i+1}, u)`` says ``u < q_{i+1}``.
    """
    if n < 0:
        raise ValueError("n must be a natural number")
    q, r = initial if initial is not None else initial_bounds(u)
    q, r = Fraction(q), Fraction(r)
    if not q < r:
        raise ValueError("initial bounds need q < r")
    cells = int((r - q) * 2 ** (n + 1)) + 1
    step = (r - q) / cells
    points = _Grid(q, step, cells)

    # Every located call below probes at the same delta = step/4, so the
    # answers are Left up to some index and Right after it; bisection finds
    # the first Right without scanning all cells.
    lo, hi = 0, cells
    while lo < hi:
        mid = (lo + hi) // 2
        if located(points[mid], points[mid + 1], u) is Side.RIGHT:
            hi = mid
        else:
            lo = mid + 1
    first = lo
    m = cells - 1
    if first == cells:
        return Bounds(points[m], points[m + 1])
    if first == 0:
        return Bounds(points[0], points[1])
    return Bounds(points[first - 1], points[first + 1])


class _Grid:
    __slots__ = ("origin", "step", "cells")

    def __init__(self, origin: Fraction, step: Fraction, cells: int):
        self.origin, self.step, self.cells = origin, step, cells

    def __getitem__(self, i: int) -> Fraction:
        if not 0 <= i <= self.cells:
            raise IndexError(i)
        return self.origin + i * self.step


def lt_real(u: Real, v: Real, budget: int = 32) -> Truth:
    """Semi-decide ``u < v`` by comparing rational brackets at n = 0, 1, ...

    Equal inputs are never resolved and come back UNDECIDED.
    """
    for n in range(budget):
        bu, bv = rational_bounds(u, n), rational_bounds(v, n)
        if bu.upper <= bv.lower:
            return Truth.HOLDS
        if bv.upper <= bu.lower:
            return Truth.FAILS
    return Truth.UNDECIDED


def shifted_family(x: CauchyApproximation, u: Real) -> CauchyApproximation:
    return CauchyApproximation(lambda eps: add(x.at(eps), u), f"({x.label} + {u!r})")


def lim_plus_const(x: CauchyApproximation, u: Real, k: int = 20, budget: int = DEFAULT_BUDGET) -> Report:
    """Check ``lim(x + u) = lim(x) + u`` up to ``2**-k``."""
    result = eq_check(lim(shifted_family(x, u)), add(lim(x), u), k, budget)
    report = Report()
    report.add("lim-plus-const", result.consistent, f"{x.label} + {u!r}: {result}")
    return report


def _memo_sequence(seq: Callable[[int], Real]) -> Callable[[int], Real]:
    cache: dict[int, Real] = {}
    lock = threading.Lock()

    def get(i: int) -> Real:
        with lock:
            hit = cache.get(i)
        if hit is None:
            hit = seq(i)
            with lock:
                hit = cache.setdefault(i, hit)
        return hit

    return get


def big_midpoint(seq: Callable[[int], Real], bound, label: str = "seq") -> Real:
    """The iterated midpoint ``sum(seq(i) * 2**-(i+1))``.

    Every ``seq(i)`` must lie in ``[-bound, bound]``. The eps-member of the
    underlying Cauchy approximation is the tower
    ``mid(s0, mid(s1, ..., mid(s_{k-1}, 0)))`` with ``bound * 2**-k < eps/2``.
    """
    if bound is None:
        raise ValueError("big_midpoint needs an explicit bound")
    bound = positive(bound)
    seq = _memo_sequence(seq)
    towers: dict[int, Real] = {0: rat(0)}
    lock = threading.Lock()

    def tower(k: int) -> Real:
        with lock:
            hit = towers.get(k)
        if hit is not None:
            return hit
        # mid(s0, mid(s1, ...)) passes eps unchanged to every term, so its
        # eps-approximation is exactly the weighted sum of theirs
        terms = tuple(seq(i) for i in range(k))
        acc = Real(lambda eps: sum((s.approximate(eps) / 2 ** (i + 1) for i, s in enumerate(terms)), Fraction(0)),
                   Derived(f"mid-tower{k}", terms))
        with lock:
            return towers.setdefault(k, acc)

    def at(eps: Fraction) -> Real:
        k = 0
        while bound / 2**k >= eps / 2:
            k += 1
        return tower(k)

    return lim(CauchyApproximation(at, f"bigmid({label})"))


def midpoint_encoding(x: CauchyApproximation, bound) -> tuple[Callable[[int], Real], Fraction]:
    """A bounded sequence whose iterated midpoint is ``lim(x)``.

    With ``y_j = x.at(2**-j)``: ``s(0) = 2*y_1`` and
    ``s(i) = 2**(i+1) * (y_{i+1} - y_i)`` for ``i >= 1``, so the weighted sum
    telescopes to the limit. ``|y_{i+1} - y_i| < 3 * 2**-(i+1)`` bounds
    ``s(i)`` by 3 and ``s(0)`` by ``2*bound``; each term is clamped to the
    common bound, which changes nothing for a genuine Cauchy ``x``.
    """
    bound = positive(bound)
    common = max(2 * bound, Fraction(3))

    def y(j: int) -> Real:
        return x.at(Fraction(1, 2**j))

    def term(i: int) -> Real:
        if i == 0:
            return clamp(_scale_pow2(y(1), 1), -common, common)
        diff = sub(y(i + 1), y(i))
        return clamp(_scale_pow2(diff, i + 1), -common, common)

    return term, common


def lim_via_midpoint(x: CauchyApproximation, bound, k: int = 20, budget: int = DEFAULT_BUDGET) -> Report:
    """Rebuild ``lim(x)`` as an iterated midpoint and compare with ``lim(x)``."""
    seq, common = midpoint_encoding(x, bound)
    rebuilt = big_midpoint(seq, common, f"enc({x.label})")
    result = eq_check(rebuilt, lim(x), k, budget)
    report = Report()
    report.add("lim-via-midpoint", result.consistent, f"{x.label}: {result}")
    return report


def signed_digits(t: Real) -> Callable[[int], int]:
    """Digits ``d_i`` in {-1, 0, 1} with ``t = sum(d_i * 2**-(i+1))``.

    ``t`` must lie in [-1, 1]. Each step reads the remainder at precision
    1/4, picks the digit, and doubles: ``t_{i+1} = 2*t_i - d_i``.
    """
    digits: list[int] = []
    state = [clamp(t, -1, 1)]
    lock = threading.Lock()

    def digit(i: int) -> int:
        with lock:
            while len(digits) <= i:
                rest = state[-1]
                a = rest.approximate(Fraction(1, 4))
                d = 1 if a > Fraction(1, 4) else -1 if a < Fraction(-1, 4) else 0
                digits.append(d)
                state.append(clamp(_double_minus(rest, d), -1, 1))
            return digits[i]

    return digit


def _double_minus(u: Real, d: int) -> Real:
    if u.rational is not None:
        return rat(2 * u.rational - d)
    return Real(lambda eps: 2 * u.approximate(eps / 2) - d, Derived(f"2x-{d}", (u,)))


def interval_hom(a: Real, b: Real) -> Callable[[Real], Real]:
    """The midpoint homomorphism ``h`` from [-1, 1] with ``h(-1) = a``, ``h(1) = b``.

    ``h(t)`` is computed as the iterated midpoint of ``h(d_i)`` over the
    signed digits of ``t``, where ``h(-1) = a``, ``h(0) = mid(a, b)`` and
    ``h(1) = b``. On values this is ``((1-t)a + (1+t)b)/2``.
    """
    images = {-1: a, 0: midpoint(a, b), 1: b}
    ba, bb = rational_bounds(a, 0), rational_bounds(b, 0)
    bound = max(abs(ba.lower), abs(ba.upper), abs(bb.lower), abs(bb.upper), Fraction(1))

    def h(t: Real) -> Real:
        bt = rational_bounds(t, 8)
        if bt.lower >= 1 or bt.upper <= -1:
            raise ValueError(f"argument {t!r} lies outside [-1, 1]")
        digit = signed_digits(t)
        return big_midpoint(lambda i: images[digit(i)], bound, f"h({t!r})")

    return h
