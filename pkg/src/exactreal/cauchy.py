"""Reals as rational approximations with a built-in modulus.

A :class:`Real` is a function ``approximate(eps)`` returning a rational within
``eps`` of the value it represents, so that for all ``d, e``::

    |approximate(d) - approximate(e)| <= d + e

This module supplies the Cauchy-structure interface on such reals: ``rat``,
``lim``, bounded closeness tests standing in for the closeness relation, an
equality checker, and executable forms of the distance laws.
"""

from __future__ import annotations

import enum
import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .rationals import format_rational, positive
from .report import Report, Tally

SLACK = Fraction(1, 2**20)
DEFAULT_BUDGET = 64

_MEMO_LIMIT = 512


@dataclass(frozen=True)
class FromRational:
    value: Fraction


@dataclass(frozen=True)
class FromLimit:
    approximation: "CauchyApproximation"


@dataclass(frozen=True)
class Derived:
    operation: str
    operands: tuple = ()


class Real:
    """A real number given by its rational approximations.

    ``fn(eps)`` must return a rational within ``eps`` of the value. Results
    are memoized per ``eps``; the memo is invisible apart from speed.
    """

    __slots__ = ("_fn", "provenance", "_memo", "_lock")

    def __init__(self, fn: Callable[[Fraction], Fraction], provenance):
        self._fn = fn
        self.provenance = provenance
        self._memo: dict[Fraction, Fraction] = {}
        self._lock = threading.Lock()

    def approximate(self, eps) -> Fraction:
        eps = positive(eps)
        with self._lock:
            hit = self._memo.get(eps)
        if hit is not None:
            return hit
        value = Fraction(self._fn(eps))
        with self._lock:
            if len(self._memo) >= _MEMO_LIMIT:
                self._memo.clear()
            self._memo[eps] = value
        return value

    @property
    def rational(self) -> Fraction | None:
        """The exact value when this real came straight from ``rat``."""
        if isinstance(self.provenance, FromRational):
            return self.provenance.value
        return None

    def __repr__(self) -> str:
        p = self.provenance
        if isinstance(p, FromRational):
            return f"rat({format_rational(p.value)})"
        if isinstance(p, FromLimit):
            return f"lim({p.approximation.label})"
        return f"{p.operation}({', '.join(map(repr, p.operands))})"

    def __add__(self, other):
        from .arith import add
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        from .arith import sub
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        from .arith import sub
        return sub(_coerce(other), self)

    def __neg__(self):
        from .arith import neg
        return neg(self)

    def __abs__(self):
        from .arith import abs_real
        return abs_real(self)


def _coerce(x) -> Real:
    if isinstance(x, Real):
        return x
    return rat(Fraction(x))


class CauchyApproximation:
    """An eps-indexed family of reals, expected to satisfy
    ``at(d) ~_{d+e} at(e)`` for all ``d, e``.

    The family is memoized so repeated lookups share one :class:`Real`.
    """

    __slots__ = ("_at", "label", "_memo", "_lock")

    def __init__(self, at: Callable[[Fraction], Real], label: str = "family"):
        self._at = at
        self.label = label
        self._memo: dict[Fraction, Real] = {}
        self._lock = threading.Lock()

    def at(self, eps) -> Real:
        eps = positive(eps)
        with self._lock:
            hit = self._memo.get(eps)
        if hit is not None:
            return hit
        member = self._at(eps)
        with self._lock:
            if len(self._memo) >= _MEMO_LIMIT:
                self._memo.clear()
            member = self._memo.setdefault(eps, member)
        return member

    __call__ = at

    def __repr__(self) -> str:
        return f"CauchyApproximation({self.label})"


def rat(q) -> Real:
    q = Fraction(q)
    return Real(lambda eps: q, FromRational(q))


def lim(x: CauchyApproximation, split=Fraction(1, 2)) -> Real:
    """The limit of a Cauchy approximation.

    ``lim(x).approximate(e)`` is ``x.at(s*e).approximate((1-s)*e)`` for the
    split ``s`` (one half by default). Any split in (0, 1) gives the same
    real; a non-Cauchy ``x`` gives a real that breaks its modulus.
    """
    split = Fraction(split)
    if not 0 < split < 1:
        raise ValueError("split must lie strictly between 0 and 1")
    if split == Fraction(1, 2):
        return Real(lambda eps: x.at(eps / 2).approximate(eps / 2), FromLimit(x))
    rest = 1 - split
    return Real(lambda eps: x.at(split * eps).approximate(rest * eps), FromLimit(x))


def constant_family(u: Real, label: str | None = None) -> CauchyApproximation:
    return CauchyApproximation(lambda eps: u, label or f"const({u!r})")


class Closeness(enum.Enum):
    PROVED_CLOSE = "proved-close"
    PROVED_APART = "proved-apart"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class ClosenessVerdict:
    outcome: Closeness
    witness_precision: Fraction

    @property
    def close(self) -> bool:
        return self.outcome is Closeness.PROVED_CLOSE

    @property
    def apart(self) -> bool:
        return self.outcome is Closeness.PROVED_APART


def close(u: Real, v: Real, eps, budget: int = DEFAULT_BUDGET) -> ClosenessVerdict:
    """Bounded test of ``|u - v| < eps``.

    Probes ``d = |u(delta) - v(delta)|`` at delta = eps/4, eps/8, ... for
    ``budget`` steps. The true distance lies within ``2*delta`` of ``d``;
    a rational operand is exact and contributes no error.
    """
    eps = positive(eps)
    if budget < 1:
        raise ValueError("budget must be at least 1")
    inexact = (u.rational is None) + (v.rational is None)
    delta = eps / 4
    for _ in range(budget):
        d = abs(u.approximate(delta) - v.approximate(delta))
        margin = inexact * delta
        if d + margin < eps:
            return ClosenessVerdict(Closeness.PROVED_CLOSE, delta)
        if d - margin >= eps:
            return ClosenessVerdict(Closeness.PROVED_APART, delta)
        delta /= 2
    return ClosenessVerdict(Closeness.UNDECIDED, delta * 2)


@dataclass(frozen=True)
class EqCheck:
    """Outcome of :func:`eq_check`.

    ``consistent`` False means refuted at ``precision``; True means no
    closeness test down to ``precision`` was refuted.
    """

    consistent: bool
    precision: Fraction

    def __bool__(self) -> bool:
        return self.consistent

    def __str__(self) -> str:
        if self.consistent:
            return f"ConsistentTo({format_rational(self.precision)})"
        return f"RefutedAt({format_rational(self.precision)})"


def eq_check(u: Real, v: Real, k: int = 20, budget: int = DEFAULT_BUDGET) -> EqCheck:
    """Refute ``u = v`` or confirm it down to ``2**-k``."""
    if k < 1:
        raise ValueError("k must be positive")
    eps = Fraction(1)
    for _ in range(k + 1):
        if close(u, v, eps, budget).apart:
            return EqCheck(False, eps)
        eps /= 2
    return EqCheck(True, Fraction(1, 2**k))


def modulus_violations(u: Real, pairs: Iterable[tuple], slack=SLACK) -> list[tuple]:
    """Sampled pairs (d, e) where ``|u(d) - u(e)| > d + e + slack``."""
    bad = []
    for d, e in pairs:
        gap = abs(u.approximate(d) - u.approximate(e))
        if gap > d + e + slack:
            bad.append((d, e, gap))
    return bad


def check_is_cauchy(x: CauchyApproximation, samples: Iterable[tuple], budget: int = DEFAULT_BUDGET,
                    slack=SLACK) -> Report:
    tally = Tally("is-cauchy")
    for d, e in samples:
        verdict = close(x.at(d), x.at(e), d + e + slack, budget)
        tally.record(not verdict.apart,
                     lambda: f"{x.label} at ({format_rational(d)}, {format_rational(e)})")
    report = Report()
    tally.into(report)
    return report


def check_limit_is_limit(x: CauchyApproximation, samples: Iterable[tuple], budget: int = DEFAULT_BUDGET,
                         slack=SLACK, limit: Real | None = None) -> Report:
    """Check ``x.at(e) ~_{e+t} u`` on sampled (e, t), for ``u = lim(x)`` by default."""
    u = lim(x) if limit is None else limit
    tally = Tally("limit-is-limit")
    for e, t in samples:
        verdict = close(x.at(e), u, e + t + slack, budget)
        tally.record(not verdict.apart,
                     lambda: f"{x.label} at ({format_rational(e)}, {format_rational(t)})")
    report = Report()
    tally.into(report)
    return report


@dataclass(frozen=True)
class KnownFamily:
    """A Cauchy approximation together with exact oracle values.

    ``value_at(e)`` is the exact value of ``approximation.at(e)`` and
    ``limit`` the exact value of its limit.
    """

    approximation: CauchyApproximation
    value_at: Callable[[Fraction], Fraction]
    limit: Fraction

    @property
    def label(self) -> str:
        return self.approximation.label


def _random_eps(rng: random.Random, lo: int = 1, hi: int = 12) -> Fraction:
    return Fraction(rng.randint(1, 16), 2 ** rng.randint(lo, hi))


def _random_slack(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 8), 2 ** rng.randint(2, 30))


def check_distance_laws(families: Sequence[KnownFamily], rng: random.Random | int = 0,
                        per_law: int = 250, budget: int = DEFAULT_BUDGET) -> Report:
    """Instantiate each of the four distance laws with exact data.

    Every hypothesis is made true by construction (the radius is the exact
    distance plus a positive margin) and the conclusion must not be proved
    apart at its stated radius.
    """
    if not families:
        raise ValueError("need at least one family")
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    report = Report()

    law = Tally("rat-rat")
    for _ in range(per_law):
        q = Fraction(rng.randint(-64, 64), rng.randint(1, 32))
        eps = _random_eps(rng, 0, 10)
        c = Fraction(rng.randint(-999, 999), 1000)
        r = q + c * eps
        verdict = close(rat(q), rat(r), eps, budget)
        law.record(not verdict.apart, lambda: f"q={q} r={r} eps={eps}")
    law.into(report)

    law = Tally("rat-lim")
    for _ in range(per_law):
        y = rng.choice(families)
        delta = _random_eps(rng)
        q = y.value_at(delta) + Fraction(rng.randint(-100, 100), 2 ** rng.randint(3, 12))
        eps = abs(q - y.value_at(delta)) + _random_slack(rng)
        verdict = close(rat(q), lim(y.approximation), eps + delta, budget)
        law.record(not verdict.apart, lambda: f"q={q} y={y.label} eps={eps} delta={delta}")
    law.into(report)

    law = Tally("lim-rat")
    for _ in range(per_law):
        x = rng.choice(families)
        delta = _random_eps(rng)
        r = x.value_at(delta) + Fraction(rng.randint(-100, 100), 2 ** rng.randint(3, 12))
        eps = abs(x.value_at(delta) - r) + _random_slack(rng)
        verdict = close(lim(x.approximation), rat(r), eps + delta, budget)
        law.record(not verdict.apart, lambda: f"x={x.label} r={r} eps={eps} delta={delta}")
    law.into(report)

    law = Tally("lim-lim")
    for _ in range(per_law):
        x = rng.choice(families)
        y = rng.choice(families)
        delta, eta = _random_eps(rng), _random_eps(rng)
        eps = abs(x.value_at(delta) - y.value_at(eta)) + _random_slack(rng)
        verdict = close(lim(x.approximation), lim(y.approximation), eps + delta + eta, budget)
        law.record(not verdict.apart,
                   lambda: f"x={x.label} y={y.label} eps={eps} delta={delta} eta={eta}")
    law.into(report)
    return report
