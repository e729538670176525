import itertools

import pytest
from hypothesis import given, strategies as st

import oracles
from stacksort import InputError, Permutation, ResourceCapError, stack_sort
from stacksort.perm import (
    ascending_runs,
    brute_force_preimages,
    descents,
    enumerate_permutations,
    is_t_stack_sortable,
    sorting_depth,
    stack_sort_iterated,
    valley_count,
    valleys,
)

perms = st.integers(1, 9).flatmap(lambda n: st.permutations(list(range(1, n + 1))))


def test_worked_example():
    assert str(stack_sort("35214")) == "31245"


@pytest.mark.parametrize("n", range(1, 8))
def test_matches_literal_stack(n):
    for p in itertools.permutations(range(1, n + 1)):
        assert stack_sort(p) == oracles.stack_sort(p)


@given(perms)
def test_recursive_decomposition(p):
    # s(L n R) = s(L) s(R) n
    p = tuple(p)
    n = len(p)
    i = p.index(n)
    left, right = p[:i], p[i + 1:]
    sl = oracles.stack_sort(left) if left else ()
    sr = oracles.stack_sort(right) if right else ()
    assert tuple(stack_sort(p)) == sl + sr + (n,)


@given(perms)
def test_depth_at_most_n_minus_one(p):
    d = sorting_depth(p)
    assert d <= max(len(p) - 1, 0)
    assert stack_sort_iterated(p, d).is_identity()
    assert is_t_stack_sortable(p, max(d, 1))


def test_last_entry_is_n():
    for p in itertools.permutations(range(1, 6)):
        assert stack_sort(p)[-1] == 5


def test_parse_and_format():
    p = Permutation.parse("2.7.3.5.9.10.11.4.8.1.6.12.13.14.15.16")
    assert p.n == 16 and p.entry(6) == 10 and p.position(10) == 6
    assert str(p) == "2.7.3.5.9.10.11.4.8.1.6.12.13.14.15.16"
    assert str(Permutation.parse("35214")) == "35214"


@pytest.mark.parametrize("bad", ["", "3521a", "1224", "0123", "1..2", "2.3"])
def test_malformed_input(bad):
    with pytest.raises(InputError):
        Permutation.parse(bad)


def test_descents_and_runs():
    d = descents("35214")
    assert tuple(d) == (2, 3)
    assert d.k == 2 and d.bounds == (0, 2, 3, 5)
    assert [list(r) for r in ascending_runs("35214")] == [[1, 2], [3], [4, 5]]
    assert d.run_of(1) == 1 and d.run_of(3) == 2 and d.run_of(5) == 3


@given(perms)
def test_statistics_match_oracle(p):
    assert list(descents(p)) == oracles.descents(p)
    assert list(valleys(p)) == oracles.interior_valleys(p)
    assert list(valleys(p, padded=True)) == oracles.padded_valleys(p)
    assert valley_count(tuple(p), padded=True) >= 1


def test_enumeration_order_and_count():
    seen = [tuple(p) for p in enumerate_permutations(4)]
    assert seen == sorted(itertools.permutations(range(1, 5)))
    assert len(list(enumerate_permutations(5, first=3))) == 24


@pytest.mark.parametrize("n", range(1, 7))
def test_preimages_match_oracle(n):
    table = oracles.preimage_table(n)
    for p in itertools.permutations(range(1, n + 1)):
        assert sorted(map(tuple, brute_force_preimages(p))) == sorted(table.get(p, []))


def test_preimage_cap():
    with pytest.raises(ResourceCapError):
        brute_force_preimages(Permutation.identity(10))
    with pytest.raises(ResourceCapError):
        brute_force_preimages(Permutation.identity(6), cap=5)


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv("STACKSORT_CAPS", "oracle=4")
    with pytest.raises(ResourceCapError):
        brute_force_preimages(Permutation.identity(5))
    monkeypatch.setenv("STACKSORT_CAPS", "oracle=x")
    from stacksort import ConfigurationError
    with pytest.raises(ConfigurationError):
        brute_force_preimages(Permutation.identity(3))
