import itertools
import random

import numpy as np
import pytest

from exactreal.models import (
    FiniteMap,
    all_maps,
    all_subtypes,
    check_joins_meets,
    check_subtype_poset,
    check_triangle,
    check_triangle_exhaustive,
    join,
    meet,
    subset,
    triangle_holds,
)


def is_partial_order(matrix: np.ndarray) -> bool:
    """Independent oracle on a boolean relation matrix."""
    m = matrix.astype(bool)
    reflexive = bool(m.diagonal().all())
    antisymmetric = not bool((m & m.T & ~np.eye(len(m), dtype=bool)).any())
    composed = (m.astype(int) @ m.astype(int)) > 0
    transitive = not bool((composed & ~m).any())
    return reflexive and antisymmetric and transitive


def subset_matrix(n):
    subs = all_subtypes(n)
    return subs, np.array([[subset(p, q) for q in subs] for p in subs])


def test_poset_examples():
    assert check_subtype_poset(0).ok
    report = check_subtype_poset(2)
    assert report.ok
    assert [e.checked for e in report] == [4, 16, 36]
    with pytest.raises(ValueError):
        check_subtype_poset(6)


@pytest.mark.parametrize("n", range(6))
def test_poset_exhaustive(n):
    assert check_subtype_poset(n).ok


@pytest.mark.parametrize("n", [2, 3])
def test_single_flip_mutants_agree_with_oracle(n):
    subs, base = subset_matrix(n)
    index = {p: i for i, p in enumerate(subs)}
    caught = 0
    for i, j in itertools.product(range(len(subs)), repeat=2):
        mutant = base.copy()
        mutant[i, j] = not mutant[i, j]
        verdict = check_subtype_poset(n, relation=lambda p, q, m=mutant: bool(m[index[p], index[q]])).ok
        assert verdict == is_partial_order(mutant), (i, j)
        caught += not verdict
    assert caught > 0


@pytest.mark.parametrize("mutant", [
    lambda p, q: any(q[a] for a in range(len(p)) if p[a]),   # some member shared
    lambda p, q: subset(p, q) and p != q,                    # strict inclusion
    lambda p, q: True,                                       # everything related
    lambda p, q: sum(p) <= sum(q),                           # compare sizes only
])
def test_formula_mutants_break_a_poset_law(mutant):
    assert not check_subtype_poset(3, relation=mutant).ok


def test_join_meet_examples():
    assert join([], 3) == (False, False, False)
    assert meet([], 3) == (True, True, True)
    singletons = [tuple(a == b for b in range(3)) for a in range(3)]
    assert join(singletons, 3) == (True, True, True)
    assert meet(singletons, 3) == (False, False, False)


def test_join_meet_match_pointwise_oracle():
    rng = random.Random(3)
    subs = all_subtypes(3)
    for _ in range(200):
        family = [p for p in subs if rng.random() < 0.4]
        stack = np.array(family, dtype=bool).reshape(len(family), 3)
        assert join(family, 3) == tuple(stack.any(axis=0))
        assert meet(family, 3) == tuple(stack.all(axis=0))


@pytest.mark.parametrize("n", range(4))
def test_joins_meets_exhaustive(n):
    assert check_joins_meets(n).ok


def test_joins_meets_sampled_at_four():
    report = check_joins_meets(4, sample=2000, seed=1)
    assert report.ok


@pytest.mark.parametrize("join_fn, meet_fn, broken", [
    (meet, meet, "join-upper-bound"),
    (join, join, "meet-lower-bound"),
    (lambda fam, n: (True,) * n, meet, "join-least"),
    (join, lambda fam, n: (False,) * n, "meet-greatest"),
])
def test_join_meet_mutants_are_caught(join_fn, meet_fn, broken):
    report = check_joins_meets(3, join_fn=join_fn, meet_fn=meet_fn)
    assert not report[broken].passed


def test_triangle_identity_example():
    one = FiniteMap.identity(1)
    assert triangle_holds(one, one, one, one) is True
    assert check_triangle(one, one, one, one).ok


def test_triangle_two_two_three():
    seen = 0
    for i_c in all_maps(2, 3):
        for i_d in all_maps(2, 3):
            if not (i_c.injective and i_d.injective) or i_c == i_d:
                continue
            for f in all_maps(2, 2):
                for g in all_maps(2, 2):
                    verdict = triangle_holds(f, g, i_c, i_d)
                    if verdict is not None:
                        assert verdict is True
                        seen += 1
    assert seen > 0


def test_triangle_is_vacuous_without_embedding():
    i_c = FiniteMap(2, 1, (0, 0))
    i_d = FiniteMap(1, 1, (0,))
    f = FiniteMap(1, 2, (0,))
    g = FiniteMap(2, 1, (0, 0))
    assert f.then(i_c) == i_d and g.then(i_d) == i_c
    assert triangle_holds(f, g, i_c, i_d) is None
    report = check_triangle(f, g, i_c, i_d)
    assert report.ok and report["triangle"].witness == "vacuous"


def test_triangle_exhaustive():
    report = check_triangle_exhaustive(3, 3, 4)
    assert report.ok
    assert report["triangle-exhaustive"].checked > 0


def test_dropping_the_embedding_hypothesis_finds_counterexamples():
    report = check_triangle_exhaustive(2, 2, 2, require_embeddings=False)
    assert not report.ok
    assert "failed" in report["triangle-exhaustive"].witness


def test_finite_map_validation():
    with pytest.raises(ValueError):
        FiniteMap(2, 2, (0,))
    with pytest.raises(ValueError):
        FiniteMap(1, 2, (2,))
    with pytest.raises(ValueError):
        FiniteMap(1, 2, (0,)).then(FiniteMap(3, 1, (0, 0, 0)))
