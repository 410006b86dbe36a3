"""Plabic graphs in a disk: trips, face labels, square moves, quivers."""

from __future__ import annotations

import itertools
import random

import pytest

from positroids import (
    DecoratedPermutation,
    PlabicGraph,
    alignments,
    bridge_graph_from_permutation,
    face_labels,
    graph_mutation_class,
    necklace_from_permutation,
    quiver_from_graph,
    square_move,
    trip_permutation,
    trips,
    validate_reduced,
)
from positroids.combinatorics import ValidationError
from positroids.plabic import movable_faces

from conftest import assert_frozen_glued, ks, random_decorated, uniform_perm


def every_decorated(n):
    for image in itertools.permutations(range(1, n + 1)):
        fixed = [i for i, v in enumerate(image, 1) if v == i]
        for signs in itertools.product((1, -1), repeat=len(fixed)):
            yield DecoratedPermutation.of(image, dict(zip(fixed, signs)))


# --- construction and trips --------------------------------------------


def test_bridge_graph_golden_hexagon(ex_135264):
    g = ex_135264["graph"]
    lab = ex_135264["labeling"]
    assert trip_permutation(g) == ex_135264["sigma"]
    assert len(lab.faces) == 7
    assert [x.label() for x in lab.boundary_labels()] == ["124", "234", "346", "456", "256", "126"]
    interior = {f.label.label() for f in lab.faces if not f.frozen}
    assert interior == {"246"}
    # the interior face is a hexagon, so no square move applies here
    assert movable_faces(lab) == ()
    assert [f.label.label() for f in lab.mutable_faces()] == ["246"]


def test_trips_start_and_end_on_the_boundary(ex_135264):
    strands = trips(ex_135264["graph"])
    assert sorted(t.source for t in strands) == [1, 2, 3, 4, 5, 6]
    sigma = ex_135264["sigma"]
    for t in strands:
        assert t.target == sigma(t.source)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_every_small_cell_round_trips_exhaustively(n):
    for sigma in every_decorated(n):
        g = bridge_graph_from_permutation(sigma)
        assert trip_permutation(g) == sigma
        assert validate_reduced(g)
        lab = face_labels(g)
        k = sigma.k
        assert len(lab.faces) == k * (n - k) - alignments(sigma) + 1
        assert lab.necklace() == necklace_from_permutation(sigma)
        assert tuple(x for x in lab.boundary_labels()) == tuple(necklace_from_permutation(sigma))


def test_random_cells_round_trip():
    rng = random.Random(20)
    for _ in range(60):
        sigma = random_decorated(rng, rng.randint(5, 8))
        g = bridge_graph_from_permutation(sigma)
        assert trip_permutation(g) == sigma
        assert validate_reduced(g)


def test_lollipop_cells():
    sigma = DecoratedPermutation.of((1, 2), {1: -1, 2: 1})
    g = bridge_graph_from_permutation(sigma)
    colors = set(g.color_map.values())
    assert colors == {"white", "black"}
    lab = face_labels(g)
    assert len(lab.faces) == 1
    assert lab.faces[0].label.label() == "1"


def test_graph_validation_rejects_bad_structure():
    with pytest.raises(ValidationError):
        PlabicGraph.of(2, {1: "white"}, [], {1: [], 2: []})  # internal id below boundary
    with pytest.raises(ValidationError):
        PlabicGraph.of(2, {5: "green"}, [(1, 5), (2, 5)], {1: [0], 2: [1], 5: [0, 1]})
    with pytest.raises(ValidationError):
        PlabicGraph.of(2, {5: "white"}, [(5, 5)], {1: [], 2: [], 5: [0, 0]})
    with pytest.raises(ValidationError):
        # rotation at 5 out of sync with its incident edges
        PlabicGraph.of(2, {5: "white"}, [(1, 5), (2, 5)], {1: [0], 2: [1], 5: [0]})


def test_bubble_graph_is_not_reduced():
    # parallel edges between opposite colors create a contractible bigon
    g = PlabicGraph.of(
        2,
        {5: "white", 6: "black"},
        [(1, 5), (5, 6), (5, 6), (6, 2)],
        {1: [0], 2: [3], 5: [0, 1, 2], 6: [3, 2, 1]},
    )
    assert not validate_reduced(g)


# --- square moves -------------------------------------------------------


def test_square_move_swaps_the_interior_label():
    g = bridge_graph_from_permutation(uniform_perm(2, 4))
    lab = face_labels(g)
    assert {f.label.label() for f in lab.faces if not f.frozen} == {"24"}
    moved = square_move(g, ks("24", 4), lab)
    mlab = face_labels(moved)
    assert {f.label.label() for f in mlab.faces if not f.frozen} == {"13"}
    assert trip_permutation(moved).k == 2
    assert validate_reduced(moved)
    # boundary faces are untouched
    assert mlab.boundary_labels() == lab.boundary_labels()


def test_square_move_is_an_involution_on_collections():
    g = bridge_graph_from_permutation(uniform_perm(2, 4))
    lab = face_labels(g)
    back = square_move(square_move(g, ks("24", 4), lab), ks("13", 4))
    assert face_labels(back).collection() == lab.collection()


def test_square_move_preserves_the_trip_permutation():
    rng = random.Random(31)
    done = 0
    while done < 12:
        sigma = random_decorated(rng, rng.randint(4, 7))
        g = bridge_graph_from_permutation(sigma)
        lab = face_labels(g)
        for face in movable_faces(lab):
            moved = square_move(g, face.label, lab)
            assert trip_permutation(moved) == sigma
            assert validate_reduced(moved)
            done += 1


def test_square_move_rejects_non_movable_faces(ex_135264):
    with pytest.raises(ValidationError):
        square_move(ex_135264["graph"], ks("246", 6), ex_135264["labeling"])
    with pytest.raises(ValidationError):
        # frozen faces are never movable
        square_move(ex_135264["graph"], ks("124", 6), ex_135264["labeling"])


# --- quivers ------------------------------------------------------------


def test_quiver_golden_single_square():
    g = bridge_graph_from_permutation(uniform_perm(2, 4))
    q = quiver_from_graph(g)
    labels = {v.id: v.label.label() for v in q.vertices}
    assert sorted(labels.values()) == ["12", "14", "23", "24", "34"]
    frozen = {labels[v.id] for v in q.vertices if v.frozen}
    assert frozen == {"12", "23", "34", "14"}
    arrows = {(labels[s], labels[t]) for s, t, m in q.core_arrows()}
    assert arrows == {("12", "24"), ("34", "24"), ("24", "23"), ("24", "14")}
    assert all(m == 1 for _, _, m in q.core_arrows())


def test_quiver_of_hexagon_cell(ex_135264):
    q = ex_135264["quiver"]
    labels = {v.id: v.label.label() for v in q.vertices}
    mutable = [labels[i] for i in q.mutable_ids()]
    assert mutable == ["246"]
    ins = {labels[s] for s, t, m in q.core_arrows() if labels[t] == "246"}
    outs = {labels[t] for s, t, m in q.core_arrows() if labels[s] == "246"}
    assert ins == {"124", "346", "256"}
    assert outs == {"234", "456", "126"}


def test_quivers_have_no_loops_or_core_two_cycles():
    rng = random.Random(41)
    for _ in range(40):
        sigma = random_decorated(rng, rng.randint(3, 8))
        g = bridge_graph_from_permutation(sigma)
        q = quiver_from_graph(g)
        assert not q.has_core_two_cycle_or_loop()


@pytest.mark.parametrize(
    "sigma",
    [
        DecoratedPermutation.of((3, 4, 1, 2, 7, 6, 5), {6: 1}),
        DecoratedPermutation.of((3, 4, 1, 2, 7, 8, 5, 6)),
        DecoratedPermutation.of((2, 1, 4, 3, 5), {5: -1}),
    ],
)
def test_disconnected_cells_glue_along_frozen_faces(sigma):
    assert_frozen_glued(sigma)


# --- serialization and closures ----------------------------------------


def test_graph_json_round_trip(ex_135264):
    g = ex_135264["graph"]
    data = g.to_json()
    assert set(data) == {"boundary", "vertices", "edges", "rotation"}
    assert all(set(v) == {"id", "color"} for v in data["vertices"])
    assert PlabicGraph.from_json(data) == g


def test_dot_output_is_stable(ex_135264):
    g = ex_135264["graph"]
    lab = ex_135264["labeling"]
    assert g.to_dot(lab) == g.to_dot(lab)
    rebuilt = bridge_graph_from_permutation(ex_135264["sigma"])
    assert rebuilt.to_dot(face_labels(rebuilt)) == g.to_dot(lab)
    assert "{2,4,6}" in g.to_dot(lab)


def test_graph_mutation_class_counts_and_limit():
    g = bridge_graph_from_permutation(uniform_perm(2, 4))
    members, complete = graph_mutation_class(g)
    assert complete and len(members) == 2
    assert all(validate_reduced(m) for m, _ in members)
    partial, complete = graph_mutation_class(bridge_graph_from_permutation(uniform_perm(2, 6)), limit=3)
    assert not complete and len(partial) == 3
