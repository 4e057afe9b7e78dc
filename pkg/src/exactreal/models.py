"""Exhaustive checks of the subtype lemmas on finite carriers.

A subtype of an ``n``-element carrier is a tuple of ``n`` booleans. Maps
between finite sets are tables of images; on sets an embedding is exactly an
injective map.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .report import Report, Tally

Subtype = tuple[bool, ...]
Relation = Callable[[Subtype, Subtype], bool]


@dataclass(frozen=True)
class FiniteSubtype:
    size: int
    members: Subtype

    def __post_init__(self):
        if len(self.members) != self.size:
            raise ValueError("membership table must have one entry per carrier element")

    def __contains__(self, a: int) -> bool:
        return self.members[a]


@dataclass(frozen=True)
class FiniteMap:
    domain: int
    codomain: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.domain:
            raise ValueError("map table must have one image per domain element")
        if any(not 0 <= y < self.codomain for y in self.table):
            raise ValueError("image outside the codomain")

    def __call__(self, x: int) -> int:
        return self.table[x]

    @property
    def injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def then(self, other: "FiniteMap") -> "FiniteMap":
        """``other ∘ self``."""
        if self.codomain != other.domain:
            raise ValueError("maps do not compose")
        return FiniteMap(self.domain, other.codomain, tuple(other(y) for y in self.table))

    @classmethod
    def identity(cls, n: int) -> "FiniteMap":
        return cls(n, n, tuple(range(n)))


def all_subtypes(n: int) -> list[Subtype]:
    return [tuple(bits) for bits in itertools.product((False, True), repeat=n)]


def all_maps(domain: int, codomain: int) -> Iterable[FiniteMap]:
    for table in itertools.product(range(codomain), repeat=domain):
        yield FiniteMap(domain, codomain, table)


def subset(p: Subtype, q: Subtype) -> bool:
    """``P ⊆ Q``: every member of P is a member of Q."""
    return all(q[a] for a in range(len(p)) if p[a])


def check_subtype_poset(n: int, relation: Relation = subset) -> Report:
    """Reflexivity, antisymmetry and transitivity of ``relation`` over all subtypes."""
    if not 0 <= n <= 5:
        raise ValueError("carrier size must be between 0 and 5")
    subs = all_subtypes(n)
    rel = {(p, q): relation(p, q) for p in subs for q in subs}
    report = Report()

    t = Tally("poset-reflexive")
    for p in subs:
        t.record(rel[p, p], lambda: f"P={p}")
    t.into(report)

    t = Tally("poset-antisymmetric")
    for p in subs:
        for q in subs:
            if rel[p, q] and rel[q, p]:
                t.record(p == q, lambda: f"P={p} Q={q}")
            else:
                t.record(True)
    t.into(report)

    t = Tally("poset-transitive")
    for p in subs:
        for q in subs:
            if not rel[p, q]:
                continue
            for r in subs:
                t.record(not rel[q, r] or rel[p, r], lambda: f"P={p} Q={q} R={r}")
    t.into(report)
    return report


def join(family: Sequence[Subtype], n: int) -> Subtype:
    """``a`` is in the join iff some member ``P`` of the family contains ``a``."""
    return tuple(any(p[a] for p in family) for a in range(n))


def meet(family: Sequence[Subtype], n: int) -> Subtype:
    """``a`` is in the meet iff every member ``P`` of the family contains ``a``."""
    return tuple(all(p[a] for p in family) for a in range(n))


def _families(subs: list[Subtype], sample: int | None, rng: random.Random):
    if sample is None:
        for mask in range(2 ** len(subs)):
            yield [p for i, p in enumerate(subs) if mask >> i & 1]
    else:
        for _ in range(sample):
            mask = rng.getrandbits(len(subs))
            yield [p for i, p in enumerate(subs) if mask >> i & 1]


def check_joins_meets(n: int, sample: int | None = None, seed: int = 0,
                      join_fn=join, meet_fn=meet) -> Report:
    """Least-upper-bound and greatest-lower-bound laws for every family E.

    Families range over all subsets of the ``2**n`` subtypes, or over
    ``sample`` random ones when given.
    """
    if not 0 <= n <= 4:
        raise ValueError("carrier size must be between 0 and 4")
    subs = all_subtypes(n)
    rng = random.Random(seed)
    upper_bound, least, lower_bound, greatest = (
        Tally("join-upper-bound"), Tally("join-least"), Tally("meet-lower-bound"), Tally("meet-greatest"))
    for family in _families(subs, sample, rng):
        j, m = join_fn(family, n), meet_fn(family, n)
        for p in family:
            upper_bound.record(subset(p, j), lambda: f"E={family} P={p}")
            lower_bound.record(subset(m, p), lambda: f"E={family} P={p}")
        for q in subs:
            if all(subset(p, q) for p in family):
                least.record(subset(j, q), lambda: f"E={family} Q={q}")
            if all(subset(q, p) for p in family):
                greatest.record(subset(q, m), lambda: f"E={family} Q={q}")
    report = Report()
    for t in (upper_bound, least, lower_bound, greatest):
        t.into(report)
    return report


def triangle_holds(f: FiniteMap, g: FiniteMap, i_c: FiniteMap, i_d: FiniteMap) -> bool | None:
    """Evaluate the embedding-triangle lemma on one instance.

    ``g: C -> D``, ``f: D -> C``, ``i_c: C -> A``, ``i_d: D -> A``. Returns
    None when the hypothesis fails (the instance is vacuous), otherwise
    whether ``f`` and ``g`` are mutually inverse.
    """
    if (g.domain, g.codomain) != (f.codomain, f.domain):
        raise ValueError("f and g must go between the same two sets in opposite directions")
    if i_c.domain != g.domain or i_d.domain != f.domain or i_c.codomain != i_d.codomain:
        raise ValueError("embeddings must start at C and D and share the codomain A")
    if not (i_c.injective and i_d.injective):
        return None
    if f.then(i_c) != i_d or g.then(i_d) != i_c:
        return None
    return f.then(g) == FiniteMap.identity(f.domain) and g.then(f) == FiniteMap.identity(g.domain)


def check_triangle(f: FiniteMap, g: FiniteMap, i_c: FiniteMap, i_d: FiniteMap) -> Report:
    verdict = triangle_holds(f, g, i_c, i_d)
    report = Report()
    report.add("triangle", verdict is not False, "vacuous" if verdict is None else "")
    return report


def check_triangle_exhaustive(max_c: int = 3, max_d: int = 3, max_a: int = 4,
                              require_embeddings: bool = True) -> Report:
    """Run the triangle lemma over every quadruple of maps up to the given sizes.

    The hypothesis splits into a condition on ``f`` alone and one on ``g``
    alone, so the commuting ``f`` and ``g`` are enumerated separately and
    then paired. With ``require_embeddings=False`` the injectivity
    hypothesis is dropped, which lets counterexamples through.
    """
    tally = Tally("triangle-exhaustive")
    vacuous = 0
    for nc, nd, na in itertools.product(range(max_c + 1), range(max_d + 1), range(max_a + 1)):
        ds = list(all_maps(nd, nc))   # f: D -> C
        gs = list(all_maps(nc, nd))   # g: C -> D
        for i_c in all_maps(nc, na):
            if require_embeddings and not i_c.injective:
                vacuous += 1
                continue
            for i_d in all_maps(nd, na):
                if require_embeddings and not i_d.injective:
                    vacuous += 1
                    continue
                fs = [f for f in ds if f.then(i_c) == i_d]
                good_g = [g for g in gs if g.then(i_d) == i_c]
                for f in fs:
                    for g in good_g:
                        ok = (f.then(g) == FiniteMap.identity(nd)
                              and g.then(f) == FiniteMap.identity(nc))
                        tally.record(ok, lambda: f"f={f.table} g={g.table} iC={i_c.table} iD={i_d.table}")
    report = Report()
    tally.into(report, f"vacuous={vacuous}")
    return report
