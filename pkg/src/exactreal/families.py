"""Builtin Cauchy approximations and sequences, and seeded random reals.

Everything here carries an exact rational oracle value so that checkers can
compare kernel output against the truth.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arith import abs_real, add, midpoint, neg
from .cauchy import CauchyApproximation, KnownFamily, Real, lim, rat
from .rationals import format_rational


def dyadic_exponent_below(eps: Fraction) -> int:
    """Smallest ``k >= 0`` with ``2**-k < eps``."""
    return (eps.denominator // eps.numerator).bit_length()


def truncate(q: Fraction, k: int) -> Fraction:
    """``q`` rounded down to the grid of step ``2**-k``."""
    scale = 2**k
    return Fraction((q.numerator * scale) // q.denominator, scale)


def truncations(q) -> KnownFamily:
    """``at(eps)`` is ``q`` rounded down to a dyadic grid finer than ``eps``."""
    q = Fraction(q)

    def value_at(eps: Fraction) -> Fraction:
        return truncate(q, dyadic_exponent_below(Fraction(eps)))

    approx = CauchyApproximation(lambda eps: rat(value_at(eps)), f"trunc({format_rational(q)})")
    return KnownFamily(approx, value_at, q)


def geometric(q) -> KnownFamily:
    """Partial sums ``q + q**2 + ... + q**N`` converging to ``q/(1-q)``.

    ``N`` is the least count whose tail bound ``|q|**(N+1)/(1-|q|)`` is
    below ``eps``. Needs ``|q| < 1``.
    """
    q = Fraction(q)
    if not abs(q) < 1:
        raise ValueError(f"geometric family needs |q| < 1, got {format_rational(q)}")
    a = abs(q)

    def value_at(eps: Fraction) -> Fraction:
        eps = Fraction(eps)
        total, power = Fraction(0), q
        tail = a / (1 - a)
        while tail >= eps:
            total += power
            power *= q
            tail *= a
        return total

    approx = CauchyApproximation(lambda eps: rat(value_at(eps)), f"geo({format_rational(q)})")
    return KnownFamily(approx, value_at, q / (1 - q))


def constant(u: Real, value: Fraction) -> KnownFamily:
    approx = CauchyApproximation(lambda eps: u, f"const({u!r})")
    return KnownFamily(approx, lambda eps: value, value)


def approximants(u: Real, value: Fraction) -> KnownFamily:
    """``at(eps) = rat(u.approximate(eps))``, whose limit is ``u`` itself."""
    approx = CauchyApproximation(lambda eps: rat(u.approximate(eps)), f"approx({u!r})")
    return KnownFamily(approx, lambda eps: u.approximate(eps), value)


def perturbed(u: Real, value: Fraction, c) -> KnownFamily:
    """``at(eps) = u + c*eps`` with ``|c| <= 1/2``; still converges to ``u``."""
    c = Fraction(c)
    if abs(c) > Fraction(1, 2):
        raise ValueError("perturbation coefficient must satisfy |c| <= 1/2")
    approx = CauchyApproximation(lambda eps: add(u, rat(c * eps)), f"({u!r} + {format_rational(c)}*eps)")
    return KnownFamily(approx, lambda eps: value + c * Fraction(eps), value)


def third() -> Real:
    return lim(truncations(Fraction(1, 3)).approximation)


def quarter() -> Real:
    return lim(truncations(Fraction(1, 4)).approximation)


def constant_sequence(c) -> Callable[[int], Real]:
    c = rat(Fraction(c))
    return lambda i: c


def unit_sequence() -> Callable[[int], Real]:
    """1, 0, 0, ..."""
    one, zero = rat(1), rat(0)
    return lambda i: one if i == 0 else zero


def alternating_sequence() -> Callable[[int], Real]:
    """1, -1, 1, -1, ..."""
    one, minus = rat(1), rat(-1)
    return lambda i: one if i % 2 == 0 else minus


@dataclass(frozen=True)
class Sample:
    """A generated real together with its exact value."""

    real: Real
    value: Fraction


class RealGenerator:
    """Seeded random reals closed under rat, lim, add, neg, abs and midpoint.

    Leaves are rationals with ``|q| <= 1/2`` or limits of builtin families;
    interior nodes combine them. Every sample records its exact value.
    """

    def __init__(self, seed: int | random.Random = 0, max_depth: int = 3):
        self.rng = seed if isinstance(seed, random.Random) else random.Random(seed)
        self.max_depth = max_depth

    def rational(self, bound=Fraction(1, 2), max_den: int = 64) -> Fraction:
        den = self.rng.randint(1, max_den)
        top = int(Fraction(bound) * den)
        return Fraction(self.rng.randint(-top, top), den)

    def family(self, depth: int | None = None) -> KnownFamily:
        depth = self.max_depth - 1 if depth is None else depth
        kind = self.rng.choice(["trunc", "geo", "const", "approx", "perturbed"])
        if kind == "trunc" or depth <= 0:
            return truncations(self.rational())
        if kind == "geo":
            return geometric(self.rational(Fraction(1, 2)))
        s = self.sample(depth - 1)
        if kind == "const":
            return constant(s.real, s.value)
        if kind == "approx":
            return approximants(s.real, s.value)
        return perturbed(s.real, s.value, self.rational(Fraction(1, 2), 8))

    def leaf(self) -> Sample:
        kind = self.rng.choice(["rat", "rat", "trunc", "geo"])
        if kind == "rat":
            q = self.rational()
            return Sample(rat(q), q)
        fam = truncations(self.rational()) if kind == "trunc" else geometric(self.rational())
        return Sample(lim(fam.approximation), fam.limit)

    def sample(self, depth: int | None = None) -> Sample:
        depth = self.max_depth if depth is None else depth
        if depth <= 0 or self.rng.random() < 0.25:
            return self.leaf()
        op = self.rng.choice(["add", "neg", "abs", "mid", "lim"])
        if op == "lim":
            fam = self.family(depth - 1)
            return Sample(lim(fam.approximation), fam.limit)
        a = self.sample(depth - 1)
        if op == "neg":
            return Sample(neg(a.real), -a.value)
        if op == "abs":
            return Sample(abs_real(a.real), abs(a.value))
        b = self.sample(depth - 1)
        if op == "add":
            return Sample(add(a.real, b.real), a.value + b.value)
        return Sample(midpoint(a.real, b.real), (a.value + b.value) / 2)

    def bounded(self, bound=1, depth: int | None = None) -> Sample:
        """A sample whose exact value lies in ``[-bound, bound]``."""
        bound = Fraction(bound)
        while True:
            s = self.sample(depth)
            if abs(s.value) <= bound:
                return s

    def eps(self, lo: int = 0, hi: int = 12) -> Fraction:
        return Fraction(self.rng.randint(1, 16), 2 ** self.rng.randint(lo, hi))

    def eps_pairs(self, count: int = 10) -> list[tuple[Fraction, Fraction]]:
        return [(self.eps(), self.eps()) for _ in range(count)]
