"""Ground-set combinatorics: k-sets, decorated permutations, necklaces, positroids."""

from __future__ import annotations

import doctest
import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from positroids import (
    DecoratedPermutation,
    GrassmannNecklace,
    KSet,
    alignments,
    cluster,
    cm,
    combinatorics,
    connected_components,
    in_positroid,
    necklace_from_permutation,
    noncrossing,
    numeric,
    permutation_from_necklace,
    plabic,
    positroid_members,
    reverse_necklace,
    shifted_leq,
)
from positroids.combinatorics import (
    SizeCapError,
    ValidationError,
    cyclic_pos,
    cyclically_ordered,
    restricted_necklace,
)

from conftest import ks, random_decorated, uniform_perm


@pytest.mark.parametrize("module", [combinatorics, plabic, cluster, cm, numeric])
def test_module_doctests(module):
    result = doctest.testmod(module)
    assert result.failed == 0


# --- KSet ---------------------------------------------------------------


def test_kset_rejects_out_of_range_and_unsorted():
    with pytest.raises(ValidationError):
        KSet.of((0, 2), 4)
    with pytest.raises(ValidationError):
        KSet.of((2, 5), 4)
    with pytest.raises(ValidationError):
        KSet((3, 2), 4)
    with pytest.raises(ValidationError):
        KSet((2, 2), 4)


def test_kset_of_sorts_and_label_round_trips():
    s = KSet.of((4, 1, 2), 6)
    assert s.elements == (1, 2, 4)
    assert s.label() == "124"
    assert KSet.from_label("124", 6) == s
    assert KSet.from_label(s.label(), 6) == s
    # two-digit ground sets switch to comma labels
    big = KSet.of((3, 11), 12)
    assert KSet.from_label(big.label(), 12) == big


def test_kset_sorted_by_starts_cyclically_at_i():
    s = KSet.of((1, 4, 6), 7)
    assert s.sorted_by(5) == (6, 1, 4)
    assert s.sorted_by(1) == (1, 4, 6)


def test_kset_replace_and_difference():
    s = KSet.of((2, 4, 6), 7)
    assert s.replace(4, 5).elements == (2, 5, 6)
    assert s.difference(KSet.of((2, 5, 6), 7)) == (4,)


def test_kset_json_is_sorted_int_list():
    s = KSet.of((5, 1), 6)
    assert s.to_json() == [1, 5]


# --- cyclic order helpers ----------------------------------------------


def test_cyclic_pos_measures_clockwise_distance():
    assert cyclic_pos(3, 3, 6) == 0
    assert cyclic_pos(3, 5, 6) == 2
    assert cyclic_pos(5, 3, 6) == 4


def test_cyclically_ordered_examples():
    assert cyclically_ordered(1, 2, 3, 4, 6)
    assert cyclically_ordered(5, 6, 1, 3, 6)
    assert not cyclically_ordered(1, 3, 2, 4, 6)


def test_shifted_leq_golden_and_is_partial_order():
    # from position 1 this is the plain Gale order
    assert shifted_leq(1, ks("124", 6), ks("356", 6))
    assert not shifted_leq(1, ks("356", 6), ks("124", 6))
    # shifting the base point reverses this particular pair
    assert shifted_leq(5, ks("356", 6), ks("124", 6))

    rng = random.Random(7)
    pool = [KSet.of(rng.sample(range(1, 7), 3), 6) for _ in range(40)]
    for a in pool:
        assert shifted_leq(2, a, a)
    for a, b in itertools.combinations(pool, 2):
        if shifted_leq(2, a, b) and shifted_leq(2, b, a):
            assert a == b
    for a, b, c in itertools.product(pool[:12], repeat=3):
        if shifted_leq(2, a, b) and shifted_leq(2, b, c):
            assert shifted_leq(2, a, c)


# --- decorated permutations --------------------------------------------


def test_permutation_requires_colors_exactly_on_fixed_points():
    with pytest.raises(ValidationError):
        DecoratedPermutation.of((1, 3, 2))  # fixed point 1 uncolored
    with pytest.raises(ValidationError):
        DecoratedPermutation.of((2, 1), {1: 1})  # 1 is not fixed
    with pytest.raises(ValidationError):
        DecoratedPermutation.of((1, 2), {1: 1, 2: 0})
    with pytest.raises(ValidationError):
        DecoratedPermutation.of((1, 1, 3), {3: 1})


def test_cycle_string_forms_parse_to_same_permutation():
    a = DecoratedPermutation.from_cycle_string("(135)(264)")
    assert a.image == (3, 6, 5, 2, 1, 4)
    assert a.k == 3
    b = DecoratedPermutation.from_cycle_string("(1,3,5)(2,6,4)")
    assert a == b
    c = DecoratedPermutation.from_cycle_string("id:+,-,+")
    assert c.image == (1, 2, 3)
    assert c.colors == ((1, 1), (2, -1), (3, 1))


def test_cycle_string_grows_n_to_cover_trailing_colors():
    # two cycles on {1..4} plus two colored fixed points forces n = 6
    s = DecoratedPermutation.from_cycle_string("(12)(34):+,-")
    assert s.n == 6
    assert s.fixed_points() == (5, 6)


@given(st.integers(0, 10**6), st.integers(1, 8))
@settings(max_examples=60, deadline=None)
def test_cycle_string_round_trips(seed, n):
    sigma = random_decorated(random.Random(seed), n)
    assert DecoratedPermutation.from_cycle_string(sigma.to_cycle_string(), n) == sigma


@given(st.integers(0, 10**6), st.integers(1, 8))
@settings(max_examples=60, deadline=None)
def test_inverse_involution_and_rank_complement(seed, n):
    sigma = random_decorated(random.Random(seed), n)
    assert sigma.inverse().inverse() == sigma
    lift = sigma.affine_lift()
    assert all(i <= f <= i + n for i, f in enumerate(lift, 1))
    # fixed points keep their color under inversion; minus ones count in both ranks
    minus = sum(1 for _, c in sigma.colors if c == -1)
    assert sigma.k + sigma.inverse().k == n - len(sigma.fixed_points()) + 2 * minus


def test_rank_counts_weak_anti_exceedances():
    assert DecoratedPermutation.from_cycle_string("(135)(264)").k == 3
    assert DecoratedPermutation.of((1, 2), {1: 1, 2: -1}).k == 1
    assert uniform_perm(2, 5).k == 2


def test_permutation_json_round_trip():
    sigma = DecoratedPermutation.of((3, 2, 1, 4), {2: -1, 4: 1})
    data = sigma.to_json()
    assert data["image"] == [3, 2, 1, 4]
    assert data["colors"] == {"2": -1, "4": 1}
    assert DecoratedPermutation.from_json(data) == sigma


# --- necklaces ----------------------------------------------------------


def test_forward_necklace_golden():
    sigma = DecoratedPermutation.from_cycle_string("(135)(264)")
    got = [x.label() for x in necklace_from_permutation(sigma)]
    assert got == ["124", "234", "346", "456", "256", "126"]


def test_reverse_necklace_golden():
    sigma = DecoratedPermutation.from_cycle_string("(135)(264)")
    got = [x.label() for x in reverse_necklace(sigma)]
    assert got == ["456", "146", "126", "236", "234", "245"]


def test_necklace_entries_step_by_at_most_one_exchange():
    rng = random.Random(11)
    for _ in range(60):
        sigma = random_decorated(rng, rng.randint(1, 8))
        neck = necklace_from_permutation(sigma)
        n = sigma.n
        for i in range(1, n + 1):
            cur = set(neck[i].elements)
            nxt = set(neck[i % n + 1].elements)
            assert cur - {i} <= nxt
            assert len(nxt - (cur - {i})) <= 1


@given(st.integers(0, 10**6), st.integers(1, 8))
@settings(max_examples=80, deadline=None)
def test_necklace_permutation_bijection(seed, n):
    sigma = random_decorated(random.Random(seed), n)
    assert permutation_from_necklace(necklace_from_permutation(sigma)) == sigma


def test_necklace_json_round_trip_both_senses():
    sigma = DecoratedPermutation.from_cycle_string("(135)(264)")
    fwd = necklace_from_permutation(sigma)
    assert GrassmannNecklace.from_json(fwd.to_json()) == fwd
    rev = reverse_necklace(sigma)
    back = GrassmannNecklace.from_json(rev.to_json(), sense="reverse")
    assert back == rev


def test_necklace_rejects_mixed_sizes():
    from positroids.combinatorics import DimensionError

    with pytest.raises(DimensionError):
        GrassmannNecklace.from_json([[1, 2], [2, 3], [3]])


# --- positroid membership ----------------------------------------------


def test_positroid_membership_golden():
    neck = necklace_from_permutation(DecoratedPermutation.from_cycle_string("(135)(264)"))
    p = positroid_members(neck)
    assert len(p.members) == 17
    assert {x.label() for x in p.complement()} == {"123", "345", "156"}
    for entry in neck:
        assert in_positroid(neck, entry)
        assert entry in p.members


def test_uniform_cell_contains_every_subset():
    neck = necklace_from_permutation(uniform_perm(2, 5))
    assert len(positroid_members(neck).members) == 10


def test_positroid_members_honours_size_cap():
    big = uniform_perm(1, 13)
    with pytest.raises(SizeCapError):
        positroid_members(necklace_from_permutation(big), n_cap=12)
    # explicit larger cap lets it through
    assert len(positroid_members(necklace_from_permutation(big), n_cap=13).members) == 13


# --- crossings ----------------------------------------------------------


def test_noncrossing_examples_and_symmetry():
    assert not noncrossing(ks("13", 4), ks("24", 4))
    assert noncrossing(ks("12", 4), ks("34", 4))
    assert noncrossing(ks("124", 6), ks("456", 6))
    assert not noncrossing(ks("246", 6), ks("135", 6))
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(2, 9)
        kk = rng.randint(1, n - 1)
        a = KSet.of(rng.sample(range(1, n + 1), kk), n)
        b = KSet.of(rng.sample(range(1, n + 1), kk), n)
        assert noncrossing(a, b) == noncrossing(b, a)


def test_noncrossing_is_rotation_invariant():
    rng = random.Random(5)
    for _ in range(80):
        n = rng.randint(2, 9)
        kk = rng.randint(1, n - 1)
        a = KSet.of(rng.sample(range(1, n + 1), kk), n)
        b = KSet.of(rng.sample(range(1, n + 1), kk), n)
        rot = lambda s: KSet.of(tuple(x % n + 1 for x in s.elements), n)
        assert noncrossing(a, b) == noncrossing(rot(a), rot(b))


def test_alignment_count_goldens():
    assert alignments(DecoratedPermutation.from_cycle_string("(135)(264)")) == 3
    assert alignments(uniform_perm(2, 4)) == 0
    assert alignments(DecoratedPermutation.of((1, 2), {1: 1, 2: -1})) == 1


# --- components ---------------------------------------------------------


def test_connected_components_goldens():
    one = connected_components(necklace_from_permutation(DecoratedPermutation.from_cycle_string("(135)(264)")))
    assert [c.elements for c in one] == [(1, 2, 3, 4, 5, 6)]

    two = connected_components(necklace_from_permutation(DecoratedPermutation.of((2, 1, 4, 3))))
    assert [c.elements for c in two] == [(1, 2), (3, 4)]

    fixed = connected_components(necklace_from_permutation(DecoratedPermutation.of((1, 2, 3), {1: 1, 2: -1, 3: 1})))
    assert [c.elements for c in fixed] == [(1,), (2,), (3,)]


def test_crossing_blocks_merge_into_one_component():
    # (13)(24) has interleaved cycles, so the whole ground set is one block
    comps = connected_components(necklace_from_permutation(DecoratedPermutation.of((3, 4, 1, 2))))
    assert [c.elements for c in comps] == [(1, 2, 3, 4)]


def test_component_necklace_agrees_with_restriction():
    # two independent routes: relabel the component permutation, or slice the
    # ambient necklace entry by entry
    sigma = DecoratedPermutation.of((3, 4, 1, 2, 7, 6, 5), {6: 1})
    neck = necklace_from_permutation(sigma)
    for comp in connected_components(neck):
        via_perm = necklace_from_permutation(comp.permutation)
        via_slice = restricted_necklace(neck, comp.elements)
        assert via_perm == via_slice
        assert comp.necklace == via_perm
