"""Combinatorial shadow of the module category over the boundary order.

Rank-one modules correspond to k-subsets; extensions between them vanish
exactly when the subsets are noncrossing, so the interesting membership
predicates (Cohen-Macaulay over the boundary order, Gorenstein-projective)
reduce to Gale-order and chord tests.  Higher-rank indecomposables are out of
scope here: they only show up implicitly, as non-Pluecker cluster variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .combinatorics import (
    DimensionError,
    GrassmannNecklace,
    KSet,
    SizeCapError,
    ValidationError,
    cyclically_ordered,
    in_positroid,
    noncrossing,
)

__all__ = [
    "RankOneModule",
    "ModuleCollection",
    "ext1_vanishes",
    "in_cm_b",
    "in_gp_b",
    "gp_b_rank_one_list",
    "is_cluster_tilting_collection",
    "maximal_noncrossing_collections",
    "k2_generator_decomposition",
]


@dataclass(frozen=True)
class RankOneModule:
    """A rank-one module, recorded by its label and drawn as a lattice path.

    The profile walks the rectangle [0, n-k] x [0, k] from the top left: one
    step per ground-set element, going down exactly at the elements of the
    label and right elsewhere.
    """

    label: KSet

    @property
    def profile(self) -> tuple[str, ...]:
        members = set(self.label.elements)
        return tuple("D" if i in members else "R" for i in range(1, self.label.n + 1))

    def __str__(self) -> str:
        return f"M[{self.label.label()}]"


@dataclass(frozen=True)
class ModuleCollection:
    """A set of rank-one labels considered inside a fixed positroid context."""

    labels: frozenset[KSet]
    necklace: GrassmannNecklace

    @classmethod
    def of(cls, labels, necklace: GrassmannNecklace, require_cm: bool = False) -> ModuleCollection:
        labels = frozenset(labels)
        for lab in labels:
            if lab.n != necklace.n or lab.k != necklace.k:
                raise DimensionError(f"{lab} does not fit a ({necklace.k},{necklace.n}) context")
            if require_cm and not in_cm_b(lab, necklace):
                raise ValidationError(f"{lab} is outside the positroid")
        return cls(labels, necklace)

    def modules(self) -> tuple[RankOneModule, ...]:
        return tuple(RankOneModule(lab) for lab in sorted(self.labels, key=lambda s: s.elements))


def ext1_vanishes(i_set: KSet, j_set: KSet) -> bool:
    """First extensions between two rank-one modules vanish iff the labels are
    noncrossing.  Symmetric; every label is rigid against itself.

    >>> ext1_vanishes(KSet.of([1, 3], 4), KSet.of([2, 4], 4))
    False
    """
    if i_set.k != j_set.k:
        raise DimensionError("rank-one labels must share k")
    return noncrossing(i_set, j_set)


def in_cm_b(label: KSet, necklace: GrassmannNecklace) -> bool:
    """Cohen-Macaulay membership over the boundary order: exactly positroid
    membership, i.e. I_i <=_i label for every i."""
    return in_positroid(necklace, label)


def in_gp_b(label: KSet, necklace: GrassmannNecklace) -> bool:
    """Gorenstein-projective membership at rank one.

    Requires positroid membership plus vanishing extensions against every
    summand of the boundary order, i.e. noncrossing with each necklace set.
    """
    if not in_cm_b(label, necklace):
        return False
    return all(noncrossing(label, j_set) for j_set in necklace)


def gp_b_rank_one_list(necklace: GrassmannNecklace, n_cap: int = 12) -> frozenset[KSet]:
    """All rank-one Gorenstein-projective labels, by exhaustive scan.

    Rank-two and higher indecomposables are not produced; when they exist they
    appear downstream as non-Pluecker cluster variables.

    >>> from .combinatorics import DecoratedPermutation, necklace_from_permutation
    >>> s = DecoratedPermutation.from_cycle_string("(135)(264)")
    >>> sorted(x.label() for x in gp_b_rank_one_list(necklace_from_permutation(s)))
    ['124', '126', '234', '246', '256', '346', '456']
    """
    n, k = necklace.n, necklace.k
    if n > n_cap:
        raise SizeCapError(f"n={n} exceeds the enumeration cap {n_cap}")
    return frozenset(
        KSet(combo, n)
        for combo in itertools.combinations(range(1, n + 1), k)
        if in_gp_b(KSet(combo, n), necklace)
    )


def is_cluster_tilting_collection(labels, necklace: GrassmannNecklace, n_cap: int = 12) -> bool:
    """Whether a set of labels indexes a cluster tilting collection.

    The conditions: contains the necklace, sits inside the positroid, is
    pairwise noncrossing, and no further positroid member can be added while
    staying pairwise noncrossing.
    """
    labels = frozenset(labels)
    if not set(necklace.sets) <= labels:
        return False
    for lab in labels:
        if not in_cm_b(lab, necklace):
            return False
    items = sorted(labels, key=lambda s: s.elements)
    for a, b in itertools.combinations(items, 2):
        if not noncrossing(a, b):
            return False
    for cand in _compatible_pool(necklace, n_cap):
        if cand not in labels and all(noncrossing(cand, lab) for lab in items):
            return False
    return True


def _compatible_pool(necklace: GrassmannNecklace, n_cap: int) -> list[KSet]:
    # candidates for extending a collection: must be noncrossing with the
    # whole necklace, which is the rank-one Gorenstein-projective condition
    return sorted(gp_b_rank_one_list(necklace, n_cap), key=lambda s: s.elements)


def maximal_noncrossing_collections(
    necklace: GrassmannNecklace, n_cap: int = 12
) -> frozenset[frozenset[KSet]]:
    """Brute force: every maximal pairwise-noncrossing collection of positroid
    members containing the necklace.

    Maximal cliques of the noncrossing graph on the compatible pool (anything
    crossing a necklace set can never join).  Pools stay small for n <= 8, so
    plain pivoting clique search is enough.
    """
    pool = _compatible_pool(necklace, n_cap)
    index = {lab: i for i, lab in enumerate(pool)}
    adj: list[set[int]] = [set() for _ in pool]
    for (i, a), (j, b) in itertools.combinations(enumerate(pool), 2):
        if noncrossing(a, b):
            adj[i].add(j)
            adj[j].add(i)
    base = {index[s] for s in necklace.sets}
    out: list[frozenset[KSet]] = []

    def expand(run: set[int], cand: set[int], seen: set[int]) -> None:
        if not cand and not seen:
            out.append(frozenset(pool[i] for i in run))
            return
        pivot = max(cand | seen, key=lambda v: len(adj[v] & cand))
        for v in sorted(cand - adj[pivot]):
            expand(run | {v}, cand & adj[v], seen & adj[v])
            cand.remove(v)
            seen.add(v)

    start = set(range(len(pool)))
    for i in base:
        start &= adj[i] | {i}
    expand(set(base), start - base, set())
    return frozenset(out)


def k2_generator_decomposition(
    label: KSet, necklace: GrassmannNecklace
) -> tuple[KSet, KSet, KSet] | None:
    """Resolve a k=2 member outside the Gorenstein-projective part.

    Scans the necklace in order for the first set J crossing ``label``; the
    crossing chords {a,c} and {b,d} admit two noncrossing reroutings, and
    exactly one of them lies inside the positroid.  Returns (J, L1, L2) with
    the product identity minor(label)*minor(J) = minor(L1)*minor(L2) on every
    point of the cell.  Returns None when the label is already
    Gorenstein-projective, so no decomposition is needed.

    >>> from .combinatorics import GrassmannNecklace, KSet
    >>> ns = GrassmannNecklace(tuple(KSet.of(s, 4) for s in ([1,3],[2,3],[1,3],[1,4])))
    >>> tuple(x.label() for x in k2_generator_decomposition(KSet.of([2, 4], 4), ns))
    ('13', '14', '23')
    """
    if label.k != 2:
        raise DimensionError("decomposition applies to k=2 only")
    if not in_cm_b(label, necklace):
        raise ValidationError(f"{label} is outside the positroid")
    if in_gp_b(label, necklace):
        return None
    n = label.n
    crossing = next(j_set for j_set in necklace if not noncrossing(label, j_set))
    # crossing 2-sets are disjoint; pick the cyclic interleaving a, b, c, d
    a, c = label.elements
    x, y = crossing.elements
    b, d = (x, y) if cyclically_ordered(a, x, c, y, n) else (y, x)
    first = (KSet.of([a, b], n), KSet.of([c, d], n))
    second = (KSet.of([a, d], n), KSet.of([b, c], n))
    first_in = all(in_positroid(necklace, s) for s in first)
    second_in = all(in_positroid(necklace, s) for s in second)
    if first_in == second_in:
        raise ValidationError(
            f"resolution dichotomy failed for {label} against {crossing}"
        )
    pair = first if first_in else second
    l1, l2 = sorted(pair, key=lambda s: s.elements)
    return crossing, l1, l2
