import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from stacksort import InputError
from stacksort.hooks import (
    Hook,
    build_vhc,
    canonical_vhc,
    check_composition,
    check_composition_conditions,
    color_diagram,
    enumerate_vhc_02,
    is_valid_hook_configuration,
    is_vhc_02,
    phi,
    reconstruct_vhc,
    valid_compositions,
)
from stacksort.perm import Permutation

EXAMPLE = Permutation.parse("2.7.3.5.9.10.11.4.8.1.6.12.13.14.15.16")


def _pairs(H):
    return tuple((h.left, h.right) for h in H.hooks)


def test_hook_geometry():
    h = Hook.on(EXAMPLE, 2, 7)
    assert h.sw == (2, 7) and h.ne == (7, 11) and h.height == 11
    assert h.covers(5, 9) and not h.covers(2, 7) and not h.covers(8, 1) and not h.covers(6, 11)
    with pytest.raises(InputError):
        Hook((3, 5), (2, 7))
    with pytest.raises(InputError):
        Hook((3, 5), (4, 4))


def test_off_diagram_hook_rejected():
    with pytest.raises(InputError):
        is_valid_hook_configuration("35214", [Hook((1, 3), (2, 4))])


def test_example_configuration():
    H = build_vhc(EXAMPLE, (7, 15, 13))
    assert _pairs(H) == ((2, 7), (6, 7), (7, 15), (9, 13), (12, 13), (14, 15))
    assert H.northeast == (7, 13, 15)
    assert H.coloring == (0, 0, 1, 1, 1, 1, 2, 3, 3, 4, 4, 4, 5, 3, 6, 0)
    assert H.theta == (0, 1, 3, 4)
    assert phi(H) == (3, 4, 3, 3)
    assert is_vhc_02(EXAMPLE, H.hooks)
    assert list(H.coloring) == oracles.coloring(EXAMPLE, _pairs(H))


def test_example_configuration_is_enumerated():
    assert (7, 15, 13) in {H.b_tuple for H in enumerate_vhc_02(EXAMPLE)}


@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_matches_hook_subset_brute_force(n):
    # every tuple of hooks with increasing southwest points, checked against (a)-(d)
    for p in itertools.permutations(range(1, n + 1)):
        mine = sorted(_pairs(H) for H in enumerate_vhc_02(p))
        assert mine == sorted(oracles.vhc02_brute(p)), p
        for H in enumerate_vhc_02(p):
            assert is_valid_hook_configuration(p, H.hooks)
            assert list(H.coloring) == oracles.coloring(p, _pairs(H))


@pytest.mark.parametrize("n", range(1, 6))
def test_validity_predicate_matches_definition(n):
    for p in itertools.permutations(range(1, n + 1)):
        for hooks in oracles.all_hook_tuples(p):
            objs = [Hook.on(p, i, j) for i, j in hooks]
            assert is_valid_hook_configuration(p, objs) == oracles.is_valid(p, hooks)


def test_nesting_rule_compares_strict_heights():
    # hooks sharing a northeast point overlap; with a non-strict height test
    # 213 would have no configuration although s(231) = 213
    p = (2, 1, 3)
    assert oracles.vhc02_brute(p, strict_heights=False) == []
    assert [_pairs(H) for H in enumerate_vhc_02(p)] == [((1, 3), (2, 3))]
    assert len(oracles.preimage_table(3)[p]) == 1


@pytest.mark.parametrize("n", range(1, 8))
def test_valid_compositions_give_fertility(n):
    table = oracles.preimage_table(n)
    for p in itertools.permutations(range(1, n + 1)):
        total = 0
        for q in valid_compositions(p):
            term = 1
            for x in q:
                term *= oracles.catalan(x)
            total += term
        assert total == len(table.get(p, [])), p


def test_compositions_shape():
    for p in itertools.permutations(range(1, 7)):
        k = len(oracles.descents(p))
        for q in valid_compositions(p):
            assert len(q) == k + 1 and sum(q) == 6 - k and min(q) >= 1


def test_empty_for_unsorted_images():
    # images of s end in n
    assert enumerate_vhc_02("2413") == []
    assert canonical_vhc("2413") is None
    assert valid_compositions("21") == []


def test_canonical_example():
    H, data = canonical_vhc(EXAMPLE)
    assert data.b_star_entries == (9, 13, 12)
    assert data.b_star == (5, 13, 12)
    assert H.b_tuple == (5, 13, 12)
    assert data.mu == phi(H)
    assert H in enumerate_vhc_02(EXAMPLE)


@pytest.mark.parametrize("n", range(1, 8))
def test_canonical_exists_iff_class_nonempty(n):
    for p in itertools.permutations(range(1, n + 1)):
        configs = enumerate_vhc_02(p)
        canon = canonical_vhc(p)
        assert (canon is None) == (not configs)
        if canon:
            assert canon[0] in configs


@pytest.mark.parametrize("n", range(1, 8))
def test_reconstruct_inverts_phi(n):
    for p in itertools.permutations(range(1, n + 1)):
        configs = enumerate_vhc_02(p)
        images = [phi(H) for H in configs]
        assert len(images) == len(set(images))
        for H in configs:
            assert reconstruct_vhc(p, phi(H)) == H


def test_reconstruct_rejects_invalid_compositions():
    V = set(valid_compositions(EXAMPLE))
    from stacksort.counting import compositions
    for q in compositions(13, 4):
        if q not in V:
            assert reconstruct_vhc(EXAMPLE, q) is None


def test_check_composition_errors():
    with pytest.raises(InputError):
        check_composition("35214", (1, 2))
    with pytest.raises(InputError):
        check_composition("35214", (1, 1, 2))
    with pytest.raises(InputError):
        check_composition("35214", (0, 2, 1))
    assert check_composition("35214", ["1", "1", "1"]) == (1, 1, 1)


@pytest.mark.parametrize("n", range(1, 8))
def test_conditions_characterise_valid_compositions(n):
    from stacksort.counting import compositions
    for p in itertools.permutations(range(1, n + 1)):
        V = set(valid_compositions(p))
        k = len(oracles.descents(p))
        if not V:
            for q in itertools.islice(compositions(n - k, k + 1), 1):
                with pytest.raises(InputError):
                    check_composition_conditions(p, q)
            continue
        for q in compositions(n - k, k + 1):
            assert check_composition_conditions(p, q) == (q in V), (p, q)


def test_conditions_on_example():
    for H in enumerate_vhc_02(EXAMPLE):
        assert check_composition_conditions(EXAMPLE, phi(H))
    assert not check_composition_conditions(EXAMPLE, (10, 1, 1, 1))


long_perms = st.integers(8, 11).flatmap(lambda n: st.permutations(list(range(1, n + 1))))


@settings(max_examples=40, deadline=None)
@given(long_perms)
def test_round_trip_on_larger_permutations(p):
    from stacksort.perm import stack_sort
    image = stack_sort(p)
    for H in enumerate_vhc_02(image):
        assert reconstruct_vhc(image, phi(H)) == H
        assert color_diagram(image, H.hooks) == H.coloring
    canon = canonical_vhc(image)
    # every image of s has at least one configuration
    assert canon is not None


def test_json_round_trip():
    import json
    H = build_vhc(EXAMPLE, (7, 15, 13))
    data = json.loads(H.to_json())
    assert data["b_tuple"] == [7, 15, 13] and data["b_entries"] == [11, 15, 13]
    assert data["hat_q"] == [3, 4, 3, 3]
