"""Shared fixtures and helpers for the suite.

Pinned counts that the code does not promise on its own live in
snapshots.json next to this file; tests compare recomputed values
against that file so regressions show up as diffs, not silent drift.
"""

from __future__ import annotations

import itertools
import json
import random
from pathlib import Path

import pytest

from positroids import (
    DecoratedPermutation,
    KSet,
    bridge_graph_from_permutation,
    connected_components,
    face_labels,
    initial_seed,
    necklace_from_permutation,
    quiver_from_graph,
)

SNAPSHOTS = json.loads((Path(__file__).parent / "snapshots.json").read_text())


def uniform_perm(k: int, n: int) -> DecoratedPermutation:
    """The shift i -> i + k mod n, whose cell is the whole nonnegative Grassmannian piece."""
    return DecoratedPermutation.of(tuple((i + k - 1) % n + 1 for i in range(1, n + 1)))


def random_decorated(rng: random.Random, n: int) -> DecoratedPermutation:
    image = rng.sample(range(1, n + 1), n)
    colors = {i: rng.choice((1, -1)) for i, v in enumerate(image, 1) if v == i}
    return DecoratedPermutation.of(tuple(image), colors)


def k2_permutations(n: int):
    """Every decorated permutation of [n] of rank two.

    Rank counts strict anti-exceedances plus minus-colored fixed points, so the
    colorings are chosen to top the strict count up to exactly two.
    """
    for image in itertools.permutations(range(1, n + 1)):
        strict = sum(1 for i, v in enumerate(image, 1) if v < i)
        if strict > 2:
            continue
        fixed = [i for i, v in enumerate(image, 1) if v == i]
        need = 2 - strict
        if need > len(fixed):
            continue
        for minus in itertools.combinations(fixed, need):
            colors = {f: (-1 if f in minus else 1) for f in fixed}
            yield DecoratedPermutation.of(image, colors)


def ks(text: str, n: int) -> KSet:
    return KSet.from_label(text, n)


def assert_frozen_glued(sigma: DecoratedPermutation) -> None:
    """Check the quiver of a disconnected cell against its components.

    Arrows touching a mutable face must split along connected components: each
    component's standalone quiver embeds by adjoining a constant background set
    to every label, every mutable face is owned by exactly one component, and
    the embedded arrows exhaust the ambient core arrows (so nothing joins
    mutable faces of different components).
    """
    neck = necklace_from_permutation(sigma)
    comps = connected_components(neck)
    assert len(comps) > 1
    graph = bridge_graph_from_permutation(sigma)
    quiver = quiver_from_graph(graph, face_labels(graph))
    labels = {v.id: v.label for v in quiver.vertices}
    mutable = {v.id for v in quiver.vertices if not v.frozen}
    prod_core = {
        (frozenset(labels[s].elements), frozenset(labels[t].elements), m)
        for s, t, m in quiver.core_arrows()
    }
    covered: set = set()
    owned_by_comp: list[set[int]] = []
    for comp in comps:
        cg = bridge_graph_from_permutation(comp.permutation)
        cq = quiver_from_graph(cg, face_labels(cg))
        clabels = {v.id: v.label for v in cq.vertices}
        cmut = {v.id for v in cq.vertices if not v.frozen}
        if not cmut:
            assert not cq.core_arrows()
            continue
        to_global = dict(enumerate(comp.elements, start=1))
        local_mutable = {
            frozenset(to_global[x] for x in clabels[i].elements) for i in cmut
        }
        owned = {
            i
            for i in mutable
            if frozenset(e for e in labels[i].elements if e in comp.elements)
            in local_mutable
        }
        owned_by_comp.append(owned)
        backgrounds = {
            frozenset(e for e in labels[i].elements if e not in comp.elements)
            for i in owned
        }
        assert len(backgrounds) == 1
        background = next(iter(backgrounds))

        def embed(label):
            return frozenset(to_global[x] for x in label.elements) | background

        for s, t, m in cq.core_arrows():
            arrow = (embed(clabels[s]), embed(clabels[t]), m)
            assert arrow in prod_core
            covered.add(arrow)
    for a, b in itertools.combinations(owned_by_comp, 2):
        assert not a & b
    assert set().union(*owned_by_comp) == mutable if owned_by_comp else not mutable
    assert covered == prod_core


@pytest.fixture(scope="session")
def ex_135264():
    """The running example: (135)(264) on [6], one hexagonal interior face."""
    sigma = DecoratedPermutation.from_cycle_string("(135)(264)")
    graph = bridge_graph_from_permutation(sigma)
    labeling = face_labels(graph)
    quiver = quiver_from_graph(graph, labeling)
    return {
        "sigma": sigma,
        "necklace": necklace_from_permutation(sigma),
        "graph": graph,
        "labeling": labeling,
        "quiver": quiver,
        "seed": initial_seed(quiver),
    }
