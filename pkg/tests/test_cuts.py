from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from exactreal import families as fam
from exactreal.arith import add, abs_real, neg, rational_bounds
from exactreal.cauchy import lim, rat
from exactreal.cuts import (
    FiniteCut,
    Grid,
    GridError,
    IncoherentFamily,
    agree,
    cell_distance,
    check_is_cut,
    cut_abs,
    cut_add,
    cut_lim,
    cut_neg,
    cut_of_real,
    cut_of_real_pointwise,
    dyadic_grid,
    exact_cut,
    is_disjoint,
)
from exactreal.suites import disjointness_remark

THIRD = Fraction(1, 3)
QUARTERS = Grid(tuple(Fraction(i, 4) for i in range(5)))
seeds = st.integers(0, 10**6)


def test_dyadic_grid_shape():
    g = dyadic_grid(-2, 2, 8)
    assert len(g) == 4 * 2**8 + 1
    assert g.step == Fraction(1, 256) and g.uniform and g.symmetric
    assert g.index(Fraction(1, 2)) == 2 * 256 + 128
    assert g.index(THIRD) is None


def test_grid_rejects_unsorted_points():
    with pytest.raises(GridError):
        Grid((Fraction(1), Fraction(0)))


def test_exact_cut_passes_all_axioms():
    c = exact_cut(THIRD, QUARTERS)
    assert c.lower == (True, True, False, False, False)
    assert c.upper == (False, False, True, True, True)
    report = check_is_cut(c)
    assert [e.name for e in report] == ["inhabited", "rounded", "transitive", "located"]
    assert report.ok


def test_transitivity_violation_witness():
    c = FiniteCut(QUARTERS, (True, True, True, False, False), (False, True, True, True, True))
    entry = check_is_cut(c)["transitive"]
    assert not entry.passed and entry.witness == "(1/4, 1/4)"
    c = FiniteCut(QUARTERS, (False, False, True, False, False), (False, True, False, False, False))
    report = check_is_cut(c)
    assert report["transitive"].witness == "(1/2, 1/4)"


def test_empty_lower_is_not_inhabited():
    c = FiniteCut(QUARTERS, (False,) * 5, (True,) * 5)
    assert not check_is_cut(c)["inhabited"].passed


def test_gap_breaks_locatedness():
    c = FiniteCut(QUARTERS, (True, False, False, False, False), (False, False, False, False, True))
    entry = check_is_cut(c)["located"]
    assert not entry.passed and entry.witness.startswith("(1/4")
    assert not check_is_cut(c, tolerance=1)["located"].passed
    assert check_is_cut(c, tolerance=2)["located"].passed


def test_hole_breaks_roundedness():
    c = FiniteCut(QUARTERS, (True, False, True, False, False), (False, False, False, True, True))
    assert not check_is_cut(c)["rounded"].passed


def test_cut_of_real_one_third():
    grid = dyadic_grid(-1, 1, 4)
    c = cut_of_real(rat(THIRD), grid)
    assert agree(c, exact_cut(THIRD, grid), 1)
    assert all(q < THIRD for q, inside in zip(grid.points, c.lower) if inside)
    assert all(r > THIRD for r, inside in zip(grid.points, c.upper) if inside)


def test_cut_of_real_at_a_grid_point():
    grid = dyadic_grid(-1, 1, 4)
    c = cut_of_real(rat(0), grid)
    zero = grid.index(Fraction(0))
    assert not c.lower[zero] and not c.upper[zero]
    assert check_is_cut(c).ok


def test_bracket_meets_the_ambiguous_cell():
    grid = dyadic_grid(-2, 2, 6)
    gen = fam.RealGenerator(17)
    for _ in range(40):
        s = gen.bounded(1)
        lo, hi = cut_of_real(s.real, grid).ambiguous_cell()
        for n in (2, 6, 10, 20):
            b = rational_bounds(s.real, n)
            assert b.lower < hi and lo < b.upper


def test_cut_arithmetic_examples():
    grid = dyadic_grid(-2, 2, 6)
    quarter = cut_of_real(rat(Fraction(1, 4)), grid)
    assert agree(cut_add(quarter, quarter), exact_cut(Fraction(1, 2), grid), 1)
    a = cut_of_real(lim(fam.truncations(Fraction(-2, 7)).approximation), grid)
    assert cut_neg(cut_neg(a)) == a
    minus_third = cut_of_real(rat(-THIRD), grid)
    assert agree(cut_abs(minus_third), exact_cut(THIRD, grid), 1)


def test_grid_closure_is_enforced():
    skewed = Grid((Fraction(0), Fraction(1, 3), Fraction(1)))
    c = exact_cut(Fraction(1, 2), skewed)
    with pytest.raises(GridError):
        cut_add(c, c)
    with pytest.raises(GridError):
        cut_neg(c)
    with pytest.raises(GridError):
        cell_distance(c, exact_cut(Fraction(1, 2), QUARTERS))


def test_cut_lim_of_constant_family():
    grid = dyadic_grid(-1, 1, 6)
    c = cut_of_real(rat(THIRD), grid)
    members = [(Fraction(1, 2**j), c) for j in (3, 6, 9, 12)]
    assert agree(cut_lim(members), exact_cut(THIRD, grid), 1)


def test_cut_lim_of_widening_then_tightening_brackets():
    grid = dyadic_grid(-1, 1, 6)
    pts = grid.points

    def bracket(w):
        return FiniteCut(grid, tuple(q < THIRD - w for q in pts), tuple(q > THIRD + w for q in pts))

    precisions = [Fraction(1, 2**j) for j in range(2, 16)]
    # bracket half-width as a fraction of eps: widening, then tightening
    shape = [Fraction(1, 8), Fraction(1, 4), Fraction(1, 2), Fraction(1, 2), Fraction(1, 4)] + [Fraction(1, 16)] * 9
    widths = [e * f for e, f in zip(precisions, shape)]
    members = [(e, bracket(w)) for e, w in zip(precisions, widths)]
    result = cut_lim(members)
    assert not check_is_cut(result)["located"].passed  # the boundary band is two cells wide
    assert check_is_cut(result, tolerance=2).ok
    assert agree(result, exact_cut(THIRD, grid), 2)


def test_cut_lim_rejects_incoherent_family():
    grid = dyadic_grid(-1, 1, 6)
    members = [(Fraction(1, 64), exact_cut(Fraction(-1, 2), grid)), (Fraction(1, 128), exact_cut(Fraction(1, 2), grid))]
    with pytest.raises(IncoherentFamily):
        cut_lim(members)
    with pytest.raises(ValueError):
        cut_lim([])


def test_transitivity_iff_disjoint_on_rounded_cuts():
    report = disjointness_remark(8)
    assert report.ok and report["transitive-iff-disjoint"].checked == 9 * 9


def test_disjointness():
    assert is_disjoint(exact_cut(THIRD, QUARTERS))
    assert not is_disjoint(FiniteCut(QUARTERS, (True,) * 3 + (False,) * 2, (False,) * 2 + (True,) * 3))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_fast_cut_matches_pointwise_probes(seed):
    grid = dyadic_grid(-2, 2, 5)
    u = fam.RealGenerator(seed).sample().real
    assert cut_of_real(u, grid) == cut_of_real_pointwise(u, grid)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_oracle_agreement(seed):
    grid = dyadic_grid(-2, 2, 8)
    gen = fam.RealGenerator(seed)
    u, v = gen.bounded(1), gen.bounded(1)
    cu, cv = cut_of_real(u.real, grid), cut_of_real(v.real, grid)
    assert check_is_cut(cu).ok
    assert agree(cut_of_real(add(u.real, v.real), grid), cut_add(cu, cv), 2)
    assert agree(cut_of_real(neg(u.real), grid), cut_neg(cu), 2)
    assert agree(cut_of_real(abs_real(u.real), grid), cut_abs(cu), 2)
    assert agree(cu, exact_cut(u.value, grid), 1)
