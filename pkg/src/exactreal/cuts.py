"""Finite-grid Dedekind cuts.

A :class:`FiniteCut` records, for every point of a finite rational grid,
whether the point lies in the lower set ``L`` (``q < x``) and in the upper
set ``U`` (``x < r``). Cut arithmetic follows the usual definitions with the
existentials searched exhaustively over the grid; the result is an oracle
independent of the approximation kernel.

A finite grid cannot express roundedness at the represented value itself, so
comparisons are made "up to k boundary cells".
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable

import numpy as np

from .arith import Side, located, neg
from .cauchy import Real
from .rationals import format_rational
from .report import Report


class GridError(ValueError):
    """The grid is not closed under the operation requested."""


class IncoherentFamily(ValueError):
    """Consecutive members of a cut family are provably too far apart."""


@dataclass(frozen=True)
class Grid:
    points: tuple[Fraction, ...]

    def __post_init__(self):
        pts = tuple(Fraction(p) for p in self.points)
        if not pts:
            raise GridError("grid needs at least one point")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise GridError("grid points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @cached_property
    def step(self) -> Fraction:
        gaps = [b - a for a, b in zip(self.points, self.points[1:])]
        return max(gaps) if gaps else Fraction(0)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Fraction:
        return self.points[i]

    @cached_property
    def uniform(self) -> bool:
        pts = self.points
        return all(b - a == pts[1] - pts[0] for a, b in zip(pts, pts[1:]))

    @cached_property
    def symmetric(self) -> bool:
        pts = self.points
        return all(p == -q for p, q in zip(pts, reversed(pts)))

    def index(self, q: Fraction) -> int | None:
        """Index of ``q`` on a uniform grid, or None when ``q`` is off the grid."""
        if len(self) == 1:
            return 0 if q == self.points[0] else None
        k = (q - self.points[0]) / self.step
        if k.denominator != 1 or not 0 <= k < len(self):
            return None
        return int(k)


def dyadic_grid(lo=-2, hi=2, m: int = 8) -> Grid:
    """Uniform grid of step ``2**-m`` from ``lo`` to ``hi`` inclusive."""
    lo, hi = Fraction(lo), Fraction(hi)
    step = Fraction(1, 2**m)
    count = (hi - lo) / step
    if count.denominator != 1 or ((lo / step).denominator != 1) or count < 0:
        raise GridError("window ends must be multiples of the step")
    return Grid(tuple(lo + i * step for i in range(int(count) + 1)))


@dataclass(frozen=True)
class FiniteCut:
    grid: Grid
    lower: tuple[bool, ...]
    upper: tuple[bool, ...]

    def __post_init__(self):
        lower, upper = tuple(map(bool, self.lower)), tuple(map(bool, self.upper))
        if len(lower) != len(self.grid) or len(upper) != len(self.grid):
            raise ValueError("lower/upper tables must match the grid length")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def max_lower(self) -> int:
        """Index of the largest grid point in L, or -1."""
        for i in range(len(self.lower) - 1, -1, -1):
            if self.lower[i]:
                return i
        return -1

    @property
    def min_upper(self) -> int:
        """Index of the smallest grid point in U, or ``len(grid)``."""
        for i, flag in enumerate(self.upper):
            if flag:
                return i
        return len(self.upper)

    def ambiguous_cell(self) -> tuple[Fraction | None, Fraction | None]:
        """The open gap ``(max L, min U)``, ends None when missing."""
        i, j = self.max_lower, self.min_upper
        lo = self.grid[i] if i >= 0 else None
        hi = self.grid[j] if j < len(self.grid) else None
        return lo, hi

    def __str__(self) -> str:
        lo, hi = self.ambiguous_cell()
        fmt = lambda q: "-" if q is None else format_rational(q)
        return f"cut(L<={fmt(lo)}, U>={fmt(hi)})"


def exact_cut(value, grid: Grid) -> FiniteCut:
    """The cut of a known rational: ``L = {q < value}``, ``U = {q > value}``."""
    value = Fraction(value)
    return FiniteCut(grid, tuple(q < value for q in grid.points), tuple(q > value for q in grid.points))


def _first_violation(mask: np.ndarray):
    hits = np.argwhere(mask)
    return tuple(int(i) for i in hits[0]) if len(hits) else None


def check_is_cut(c: FiniteCut, tolerance: int = 0) -> Report:
    """Check the four cut axioms restricted to grid points.

    Roundedness is checked in both directions along the grid: anything
    below an L point is in L, and every L point has a larger L point,
    except the largest one, which borders the boundary cell (dually for U).
    Locatedness ignores pairs at most ``tolerance`` cells apart, the band
    a derived cut may leave undecided.
    """
    pts = c.grid.points
    n = len(pts)
    L = np.array(c.lower, dtype=bool)
    U = np.array(c.upper, dtype=bool)
    report = Report()
    fmt = format_rational

    ok = bool(L.any()) and bool(U.any())
    report.add("inhabited", ok, "" if ok else f"L empty={not L.any()} U empty={not U.any()}")

    witness = ""
    top, bottom = c.max_lower, c.min_upper
    for i in range(n):
        if not L[i] and i < top:
            witness = f"L not downward closed at {fmt(pts[i])}"
            break
        if not U[i] and i > bottom:
            witness = f"U not upward closed at {fmt(pts[i])}"
            break
        if L[i] and i != top and not L[i + 1:].any():
            witness = f"L point {fmt(pts[i])} has no larger L point"
            break
        if U[i] and i != bottom and not U[:i].any():
            witness = f"U point {fmt(pts[i])} has no smaller U point"
            break
    report.add("rounded", not witness, witness)

    # q in L and r in U must give q < r, i.e. index(q) < index(r)
    idx = np.arange(n)
    bad = np.logical_and.outer(L, U) & (idx[:, None] >= idx[None, :])
    hit = _first_violation(bad)
    report.add("transitive", hit is None,
               "" if hit is None else f"({fmt(pts[hit[0]])}, {fmt(pts[hit[1]])})")

    # q < r must give q in L or r in U
    bad = np.logical_and.outer(~L, ~U) & (idx[None, :] - idx[:, None] > tolerance)
    hit = _first_violation(bad)
    report.add("located", hit is None,
               "" if hit is None else f"({fmt(pts[hit[0]])}, {fmt(pts[hit[1]])})")
    return report


def is_disjoint(c: FiniteCut) -> bool:
    return not any(a and b for a, b in zip(c.lower, c.upper))


def cut_of_real(u: Real, grid: Grid) -> FiniteCut:
    """Sample the cut of ``u`` on ``grid`` with located probes one step wide.

    ``q`` is put in L when ``located(q, q + step, u)`` answers Left, and
    ``r`` in U when the mirrored probe on ``-u`` answers Left, i.e. ``u < r``.
    All probes share delta = step/4 and so read the same approximation
    ``a``: L is the set of points below ``a - delta`` and U the set above
    ``a + delta``, found by bisection. :func:`cut_of_real_pointwise` makes
    the located calls one by one.
    """
    step = _probe_step(grid)
    delta = step / 4
    a = u.approximate(delta)
    n = len(grid)
    below = bisect_left(grid.points, a - delta)
    above = bisect_right(grid.points, a + delta)
    return FiniteCut(grid, (True,) * below + (False,) * (n - below),
                     (False,) * above + (True,) * (n - above))


def cut_of_real_pointwise(u: Real, grid: Grid) -> FiniteCut:
    step = _probe_step(grid)
    minus = neg(u)
    lower = tuple(located(q, q + step, u) is Side.LEFT for q in grid.points)
    upper = tuple(located(-r, -r + step, minus) is Side.LEFT for r in grid.points)
    return FiniteCut(grid, lower, upper)


def _probe_step(grid: Grid) -> Fraction:
    return grid.step if len(grid) > 1 else Fraction(1)


def _require_sum_closed(grid: Grid) -> None:
    if len(grid) < 2 or not grid.uniform or (grid[0] / grid.step).denominator != 1:
        raise GridError("cut addition needs a uniform grid anchored at a multiple of its step")


def _require_symmetric(grid: Grid) -> None:
    if not grid.symmetric:
        raise GridError("negation needs a grid symmetric about 0")


def _same_grid(*cuts: FiniteCut) -> Grid:
    grid = cuts[0].grid
    if any(c.grid is not grid and c.grid != grid for c in cuts[1:]):
        raise GridError("cuts live on different grids")
    return grid


def cut_add(a: FiniteCut, b: FiniteCut) -> FiniteCut:
    """``q < a+b`` iff some grid ``s + t = q`` has ``s < a`` and ``t < b``; dually for U.

    The search over all grid pairs ``(s, t)`` is a boolean convolution.
    """
    grid = _same_grid(a, b)
    _require_sum_closed(grid)
    n = len(grid)
    offset = -int(grid[0] / grid.step)  # index(s) + index(t) = index(s + t) + offset

    def combine(x, y):
        hits = np.convolve(np.array(x, dtype=np.int64), np.array(y, dtype=np.int64))
        out = []
        for k in range(n):
            c = k + offset
            out.append(bool(0 <= c < len(hits) and hits[c] > 0))
        return tuple(out)

    return FiniteCut(grid, combine(a.lower, b.lower), combine(a.upper, b.upper))


def cut_neg(a: FiniteCut) -> FiniteCut:
    """``q < -a`` iff ``a < -q``; ``-a < r`` iff ``-r < a``."""
    _require_symmetric(a.grid)
    return FiniteCut(a.grid, tuple(reversed(a.upper)), tuple(reversed(a.lower)))


def cut_abs(a: FiniteCut) -> FiniteCut:
    """``q < |a|`` iff ``q < a`` or ``q < -a``; ``|a| < r`` iff ``a < r`` and ``-a < r``."""
    m = cut_neg(a)
    lower = tuple(x or y for x, y in zip(a.lower, m.lower))
    upper = tuple(x and y for x, y in zip(a.upper, m.upper))
    return FiniteCut(a.grid, lower, upper)


def _apart(a: FiniteCut, b: FiniteCut, radius: Fraction) -> bool:
    """True when the grids prove ``|a - b| >= radius``."""
    grid = a.grid
    i, j = a.max_lower, b.max_lower
    ui, uj = a.min_upper, b.min_upper
    if ui < len(grid) and j >= 0 and grid[ui] + radius <= grid[j]:
        return True
    if uj < len(grid) and i >= 0 and grid[uj] + radius <= grid[i]:
        return True
    return False


def cut_lim(members: Iterable[tuple[Fraction, FiniteCut]]) -> FiniteCut:
    """Limit of a finite family of cuts ``{eps: cut of x_eps}``.

    ``q < lim`` iff ``q + eps + theta < x_eps`` for some ``eps, theta`` in the
    index set, and ``lim < r`` iff ``x_eps < r - eps - theta``. Raises
    :class:`IncoherentFamily` when two consecutive members are provably
    further apart than the sum of their indices.
    """
    members = sorted(((Fraction(e), c) for e, c in members), key=lambda m: m[0], reverse=True)
    if not members:
        raise ValueError("empty family")
    grid = _same_grid(*(c for _, c in members))
    for (e1, c1), (e2, c2) in zip(members, members[1:]):
        if _apart(c1, c2, e1 + e2):
            raise IncoherentFamily(f"members at {format_rational(e1)} and {format_rational(e2)}: {c1} vs {c2}")

    index = [e for e, _ in members]
    lower_thresholds = []
    upper_thresholds = []
    for eps, cut in members:
        top, bottom = cut.max_lower, cut.min_upper
        for theta in index:
            if top >= 0:
                lower_thresholds.append(grid[top] - eps - theta)
            if bottom < len(grid):
                upper_thresholds.append(grid[bottom] + eps + theta)
    # a point at or below an L point of x_eps lies in that cut's L, so the
    # existential over (eps, theta) reduces to the loosest threshold
    lo = max(lower_thresholds, default=None)
    hi = min(upper_thresholds, default=None)
    lower = tuple(lo is not None and q <= lo for q in grid.points)
    upper = tuple(hi is not None and r >= hi for r in grid.points)
    return FiniteCut(grid, lower, upper)


def cell_distance(a: FiniteCut, b: FiniteCut) -> int:
    """How many grid cells the two boundary gaps are displaced by."""
    _same_grid(a, b)
    return max(abs(a.max_lower - b.max_lower), abs(a.min_upper - b.min_upper))


def agree(a: FiniteCut, b: FiniteCut, cells: int) -> bool:
    return cell_distance(a, b) <= cells
