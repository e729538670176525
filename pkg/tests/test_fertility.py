import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from stacksort import ConfigurationError, InputError
from stacksort.counting import catalan, gen_narayana
from stacksort.fertility import (
    ValleyConvention,
    fertility,
    fertility_by_descents,
    fertility_descent_upper_bound,
    fertility_upper_bound,
    preimages_by_valleys,
    profile,
)
from stacksort.perm import Permutation

# frozen from the brute-force oracle in oracles.py
FROZEN = {
    "31245": (9, {1: 2, 2: 5, 3: 2}, {2: 8, 3: 1}),
    "21435": (1, {2: 1}, {3: 1}),
    "1324": (2, {1: 1, 2: 1}, {2: 2}),
    "3142567": (27, {2: 6, 3: 15, 4: 6}, {3: 24, 4: 3}),
}


@pytest.mark.parametrize("p", sorted(FROZEN))
def test_frozen_profiles(p):
    total, by_d, by_v = FROZEN[p]
    prof = profile(p)
    assert prof.total == total
    assert {m: c for m, c in prof.by_descents.items() if c} == by_d
    assert {m: c for m, c in prof.by_valleys.items() if c} == by_v


@pytest.mark.parametrize("n", range(1, 13))
def test_identity_fertility_is_catalan(n):
    assert fertility(Permutation.identity(n)) == catalan(n)


def test_identity_two():
    assert fertility("12") == 2
    assert fertility_by_descents("12", 0) == 1 and fertility_by_descents("12", 1) == 1
    # both preimages 12 and 21 have one valley once the ends are padded
    assert preimages_by_valleys("12", 1) == 2
    assert preimages_by_valleys("12", 0) == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_oracle_equivalence(n):
    table = oracles.preimage_table(n)
    for p in itertools.permutations(range(1, n + 1)):
        pre = table.get(p, [])
        assert fertility(p) == len(pre)
        by_d = Counter(len(oracles.descents(x)) for x in pre)
        by_v = Counter(len(oracles.padded_valleys(x)) for x in pre)
        for m in range(n + 1):
            assert fertility_by_descents(p, m) == by_d[m]
            assert preimages_by_valleys(p, m) == by_v[m]


def test_interior_valleys_are_not_what_the_formula_counts():
    pre = oracles.preimage_table(5)[(3, 1, 2, 4, 5)]
    interior = Counter(len(oracles.interior_valleys(x)) for x in pre)
    assert interior[1] == 7
    assert preimages_by_valleys("31245", 1) == 0


def test_unit_convention_requires_opt_in():
    with pytest.raises(ConfigurationError):
        profile("31245", ValleyConvention.UNIT)
    with pytest.raises(ConfigurationError):
        preimages_by_valleys("31245", 2, "unit")
    prof = profile("31245", "unit", strict=False)
    assert prof.provisional and prof.to_dict()["provisional"] is True
    assert prof.by_valleys[2] == 12  # differs from the oracle's 8
    with pytest.raises(ValueError):
        profile("31245", "half")


def test_profile_ranges():
    prof = profile("3142567")
    assert sorted(prof.by_descents) == list(range(2, 5))
    assert sorted(prof.by_valleys) == list(range(3, 5))
    empty = profile("2413")
    assert empty.total == 0 and empty.by_descents == {} and empty.by_valleys == {}


def test_profile_serialises_counts_as_strings():
    data = profile(Permutation.identity(12)).to_dict()
    assert data["total"] == "208012"
    assert all(isinstance(v, str) for v in data["by_descents"].values())
    assert data["valley_statistic"] == "padded"


def test_out_of_range_refinements_are_zero():
    assert fertility_by_descents("31245", 0) == 0
    assert fertility_by_descents("31245", 4) == 0
    assert preimages_by_valleys("31245", -1) == 0


@pytest.mark.parametrize("n", range(1, 8))
def test_bona_symmetry(n):
    for p in itertools.permutations(range(1, n + 1)):
        prof = profile(p)
        for m, c in prof.by_descents.items():
            assert c == prof.by_descents[n - 1 - m]


@pytest.mark.parametrize("n", range(1, 8))
def test_upper_bounds_dominate(n):
    for p in itertools.permutations(range(1, n + 1)):
        k = len(oracles.descents(p))
        prof = profile(p)
        assert prof.total <= fertility_upper_bound(n, k)
        for m in range(n):
            assert fertility_by_descents(p, m) <= fertility_descent_upper_bound(n, k, m)


def test_bound_arguments():
    with pytest.raises(InputError):
        fertility_upper_bound(4, 4)
    assert fertility_descent_upper_bound(6, 1, 3) == gen_narayana(1, 5, 3)
    # the identity attains the k = 0 bound
    assert fertility_upper_bound(7, 0) == catalan(7)


@settings(max_examples=30, deadline=None)
@given(st.integers(8, 12).flatmap(lambda n: st.permutations(list(range(1, n + 1)))))
def test_refinements_sum_to_total(p):
    from stacksort.perm import stack_sort
    prof = profile(stack_sort(p))
    assert prof.total > 0
    assert sum(prof.by_descents.values()) == prof.total
    assert sum(prof.by_valleys.values()) == prof.total
