"""Seeded check suites behind ``exactreal check <suite>``."""

from __future__ import annotations

from fractions import Fraction

from . import families as fam
from .arith import (
    add,
    abs_real,
    big_midpoint,
    interval_hom,
    lim_plus_const,
    lim_via_midpoint,
    midpoint,
    neg,
)
from .cauchy import (
    DEFAULT_BUDGET,
    SLACK,
    CauchyApproximation,
    check_distance_laws,
    check_is_cauchy,
    check_limit_is_limit,
    constant_family,
    eq_check,
    lim,
    modulus_violations,
    rat,
)
from .cuts import (
    FiniteCut,
    Grid,
    agree,
    cell_distance,
    check_is_cut,
    cut_abs,
    cut_add,
    cut_lim,
    cut_neg,
    cut_of_real,
    dyadic_grid,
    exact_cut,
    is_disjoint,
)
from .models import check_joins_meets, check_subtype_poset, check_triangle_exhaustive
from .report import Report, Tally

K = 20


def laws(seed: int = 0, instances: int = 1000, budget: int = DEFAULT_BUDGET, slack=SLACK) -> Report:
    gen = fam.RealGenerator(seed)
    report = Report()

    t = Tally("modulus")
    for _ in range(instances):
        s = gen.sample()
        bad = modulus_violations(s.real, gen.eps_pairs(10), slack)
        t.record(not bad, lambda: f"{s.real!r} at {bad[0][:2]}")
    t.into(report)

    families = [gen.family() for _ in range(50)]
    report.extend(check_distance_laws(families, gen.rng, max(1, instances // 4), budget))

    t = Tally("eq-extensionality")
    for _ in range(max(1, instances // 10)):
        u, v = eq_pair(gen)
        deltas = [gen.eps(0, 24) for _ in range(5)]
        if eq_check(u, v, K, budget):
            for d in deltas:
                gap = abs(u.approximate(d) - v.approximate(d))
                t.record(gap <= 2 * d + Fraction(1, 2**K), lambda: f"{u!r} vs {v!r} at {d}")
        else:
            t.record(True)
    t.into(report)
    return report


def eq_pair(gen: fam.RealGenerator):
    """A pair of reals that are equal, very close, or unrelated."""
    s = gen.sample()
    kind = gen.rng.choice(["same", "approx", "shift0", "mid", "near", "other"])
    if kind == "same":
        return s.real, s.real
    if kind == "approx":
        return s.real, lim(fam.approximants(s.real, s.value).approximation)
    if kind == "shift0":
        return s.real, add(s.real, rat(0))
    if kind == "mid":
        return s.real, midpoint(s.real, s.real)
    if kind == "near":
        return s.real, add(s.real, rat(Fraction(gen.rng.choice([-1, 1]), 2 ** gen.rng.randint(18, 40))))
    return s.real, gen.sample().real


def broken_family() -> CauchyApproximation:
    """``at(eps) = 1/eps``: not Cauchy."""
    return CauchyApproximation(lambda eps: rat(1 / eps), "broken(1/eps)")


def limits(seed: int = 0, instances: int = 100, budget: int = DEFAULT_BUDGET, slack=SLACK) -> Report:
    gen = fam.RealGenerator(seed)
    report = Report()
    cauchy, limit, unique, oracle, plus = (Tally("is-cauchy"), Tally("limit-is-limit"), Tally("limit-unique"),
                                           Tally("limit-value"), Tally("lim-plus-const"))
    for _ in range(instances):
        f = gen.family()
        x = f.approximation
        pairs = gen.eps_pairs(10)
        cauchy.record(check_is_cauchy(x, pairs, budget, slack).ok, x.label)
        other = lim(x, Fraction(1, 3))
        limit.record(check_limit_is_limit(x, pairs, budget, slack).ok
                     and check_limit_is_limit(x, pairs, budget, slack, limit=other).ok, x.label)
        unique.record(bool(eq_check(lim(x), other, K, budget)), x.label)
        oracle.record(bool(eq_check(lim(x), rat(f.limit), K, budget)), x.label)
        plus.record(lim_plus_const(x, gen.sample().real, K, budget).ok, x.label)
    for t in (cauchy, limit, unique, oracle, plus):
        t.into(report)

    t = Tally("rat-lim-coherence")
    for _ in range(instances):
        q = gen.rational(Fraction(8))
        t.record(bool(eq_check(lim(constant_family(rat(q))), rat(q), K, budget)), q)
    t.into(report)

    detected = not check_is_cauchy(broken_family(), [(Fraction(1, 100), Fraction(1, 2))], budget, slack).ok
    report.add("non-cauchy-detected", detected, "broken(1/eps)")
    return report


def lim_precisions() -> list[Fraction]:
    return [Fraction(1, 2**j) for j in (2, 6, 10, 14, 18, 22)]


def cuts(seed: int = 0, instances: int = 100, m: int = 8, cells: int = 2) -> Report:
    gen = fam.RealGenerator(seed)
    grid = dyadic_grid(-2, 2, m)
    report = Report()
    axioms = Tally("cut-axioms")
    exact = Tally("oracle-exact")
    t_add, t_neg, t_abs, t_lim = (Tally("oracle-add"), Tally("oracle-neg"), Tally("oracle-abs"),
                                  Tally("oracle-lim"))
    lim_cut = Tally("cut-lim-axioms")
    for _ in range(instances):
        u, v = gen.bounded(1), gen.bounded(1)
        cu, cv = cut_of_real(u.real, grid), cut_of_real(v.real, grid)
        axioms.record(check_is_cut(cu).ok, lambda: f"{u.real!r}: {check_is_cut(cu).failures[0].line()}")
        exact.record(agree(cu, exact_cut(u.value, grid), 1), lambda: f"{u.real!r} vs {u.value}")
        t_add.record(agree(cut_of_real(add(u.real, v.real), grid), cut_add(cu, cv), cells),
                     lambda: f"{u.real!r} + {v.real!r}")
        t_neg.record(agree(cut_of_real(neg(u.real), grid), cut_neg(cu), cells), lambda: repr(u.real))
        t_abs.record(agree(cut_of_real(abs_real(u.real), grid), cut_abs(cu), cells), lambda: repr(u.real))
        f = bounded_family(gen, 1)
        oracle = cut_lim((e, cut_of_real(f.approximation.at(e), grid)) for e in lim_precisions())
        lim_cut.record(check_is_cut(oracle, tolerance=cells).ok, lambda: f"{f.label}: {oracle}")
        t_lim.record(agree(cut_of_real(lim(f.approximation), grid), oracle, cells),
                     lambda: f"{f.label}: {cell_distance(cut_of_real(lim(f.approximation), grid), oracle)} cells")
    for t in (axioms, exact, t_add, t_neg, t_abs, t_lim, lim_cut):
        t.into(report)
    report.extend(disjointness_remark())
    return report


def bounded_family(gen: fam.RealGenerator, bound):
    while True:
        f = gen.family()
        if abs(f.limit) <= Fraction(bound) - Fraction(1, 4):
            return f


def disjointness_remark(size: int = 6) -> Report:
    """On every rounded cut of a small grid, transitivity holds iff L and U are disjoint."""
    grid = Grid(tuple(Fraction(i, 2) for i in range(size)))
    t = Tally("transitive-iff-disjoint")
    for top in range(-1, size):
        for bottom in range(0, size + 1):
            c = FiniteCut(grid, tuple(i <= top for i in range(size)), tuple(i >= bottom for i in range(size)))
            transitive = check_is_cut(c)["transitive"].passed
            t.record(transitive == is_disjoint(c), lambda: str(c))
    report = Report()
    t.into(report)
    return report


def models(sample: int = 10_000, seed: int = 0) -> Report:
    report = Report()
    for n in range(6):
        for e in check_subtype_poset(n):
            report.add(f"{e.name}[n={n}]", e.passed, e.witness, e.checked)
    for n in range(4):
        for e in check_joins_meets(n):
            report.add(f"{e.name}[n={n}]", e.passed, e.witness, e.checked)
    for e in check_joins_meets(4, sample=sample, seed=seed):
        report.add(f"{e.name}[n=4,sampled]", e.passed, e.witness, e.checked)
    report.extend(check_triangle_exhaustive(3, 3, 4))
    return report


def dyadics(m: int = 6) -> list[Fraction]:
    """All k/2**m in [-1, 1]; includes every coarser dyadic."""
    return [Fraction(k, 2**m) for k in range(-(2**m), 2**m + 1)]


def affine(a: Fraction, b: Fraction, t: Fraction) -> Fraction:
    return ((1 - t) * a + (1 + t) * b) / 2


def midpoints(seed: int = 0, instances: int = 50, pairs: int = 20, m: int = 6,
              budget: int = DEFAULT_BUDGET) -> Report:
    gen = fam.RealGenerator(seed)
    report = Report()
    report.add("bigmid-unit", bool(eq_check(big_midpoint(fam.unit_sequence(), 1), rat(Fraction(1, 2)), K, budget)))
    report.add("bigmid-alt", bool(eq_check(big_midpoint(fam.alternating_sequence(), 1), rat(Fraction(1, 3)), K, budget)))
    c = Fraction(-3, 7)
    report.add("bigmid-const", bool(eq_check(big_midpoint(fam.constant_sequence(c), 1), rat(c), K, budget)))

    t = Tally("lim-via-midpoint")
    for _ in range(instances):
        f = gen.family()
        t.record(lim_via_midpoint(f.approximation, abs(f.limit) + 1, K, budget).ok, f.label)
    t.into(report)

    idem, comm, medial = Tally("midpoint-idempotent"), Tally("midpoint-commutative"), Tally("midpoint-medial")
    for _ in range(instances):
        a, b, c, d = (gen.sample().real for _ in range(4))
        idem.record(bool(eq_check(midpoint(a, a), a, K, budget)), repr(a))
        comm.record(bool(eq_check(midpoint(a, b), midpoint(b, a), K, budget)), f"{a!r}, {b!r}")
        medial.record(bool(eq_check(midpoint(midpoint(a, b), midpoint(c, d)),
                                    midpoint(midpoint(a, c), midpoint(b, d)), K, budget)), f"{a!r}..{d!r}")
    for t in (idem, comm, medial):
        t.into(report)
    report.extend(interval_laws(gen, pairs, m, budget))
    return report


def interval_laws(gen: fam.RealGenerator, pairs: int = 20, m: int = 6, budget: int = DEFAULT_BUDGET) -> Report:
    """Endpoint, affine-value and midpoint-homomorphism laws of the interval map."""
    points = dyadics(m)
    ends, value, hom = Tally("interval-endpoints"), Tally("interval-affine"), Tally("interval-homomorphism")
    for _ in range(pairs):
        a, b = gen.bounded(1), gen.bounded(1)
        h = interval_hom(a.real, b.real)
        # midpoints of level-m dyadics are level m+1; share one real per argument
        image = {t: h(rat(t)) for t in dyadics(m + 1)}
        ends.record(bool(eq_check(image[-1], a.real, K, budget)) and bool(eq_check(image[1], b.real, K, budget)),
                    f"a={a.real!r} b={b.real!r}")
        for s in points:
            partner = gen.rng.choice(points)
            value.record(bool(eq_check(image[s], rat(affine(a.value, b.value, s)), K, budget)),
                         lambda: f"a={a.value} b={b.value} t={s}")
            hom.record(bool(eq_check(image[(s + partner) / 2], midpoint(image[s], image[partner]), K, budget)),
                       lambda: f"a={a.value} b={b.value} s={s} t={partner}")
    report = Report()
    for t in (ends, value, hom):
        t.into(report)
    return report


SUITES = {
    "laws": laws,
    "limits": limits,
    "cuts": cuts,
    "models": models,
    "midpoint": midpoints,
}
