"""The thirteen acceptance criteria, one test each.

The conftest prints a PASS/FAIL line per criterion in the terminal summary.
Brute-force sides come from ``oracles.py`` wherever the package would
otherwise be checked against itself.
"""

import itertools
import time
from collections import Counter
from fractions import Fraction

import pytest

import oracles
from stacksort import bounds
from stacksort.counting import (
    E_sum,
    catalan,
    catalan_product_closed_form,
    catalan_product_sum,
    gen_narayana,
    lattice_paths_count,
)
from stacksort.enumeration import (
    composition_expansion,
    count_direct,
    w2_by_descents,
    w2_closed_form,
)
from stacksort.fertility import (
    fertility_descent_upper_bound,
    fertility_upper_bound,
    profile,
)
from stacksort.hooks import canonical_vhc, enumerate_vhc_02, phi, reconstruct_vhc
from stacksort.perm import Permutation, stack_sort

EXAMPLE = Permutation.parse("2.7.3.5.9.10.11.4.8.1.6.12.13.14.15.16")


@pytest.fixture(autouse=True)
def _report(request):
    start = time.perf_counter()
    yield
    print(f"{request.node.name}: {time.perf_counter() - start:.2f}s")


def test_1_worked_example():
    assert str(stack_sort("35214")) == "31245"


def test_2_w1_is_catalan():
    for n in range(1, 10):
        assert count_direct(1, n)[0] == catalan(n)


def test_3_w2_closed_forms():
    for n in range(1, 10):
        direct, row = count_direct(2, n)
        assert direct == w2_closed_form(n)
        assert direct == sum(w2_by_descents(n, k) for k in range(n))
        assert row == {k: w2_by_descents(n, k) for k in range(n)}


def test_4_fertility_oracle_equivalence():
    for n in range(1, 8):
        table = oracles.preimage_table(n)
        for p in itertools.permutations(range(1, n + 1)):
            pre = table.get(p, [])
            prof = profile(p)
            assert prof.total == len(pre)
            by_d = Counter(len(oracles.descents(x)) for x in pre)
            by_v = Counter(len(oracles.padded_valleys(x)) for x in pre)
            assert {m: c for m, c in prof.by_descents.items() if c} == dict(by_d)
            assert {m: c for m, c in prof.by_valleys.items() if c} == dict(by_v)


def test_5_phi_injective_and_reconstruct():
    for n in range(1, 8):
        for p in itertools.permutations(range(1, n + 1)):
            configs = enumerate_vhc_02(p)
            images = [phi(H) for H in configs]
            assert len(set(images)) == len(images)
            for H in configs:
                assert reconstruct_vhc(p, phi(H)) == H


def test_6_canonical_example():
    H, data = canonical_vhc(EXAMPLE)
    assert data.b_star_entries == (9, 13, 12)
    assert data.b_star == (5, 13, 12)
    assert (7, 15, 13) in {G.b_tuple for G in enumerate_vhc_02(EXAMPLE)}


def test_7_generalized_narayana_identities():
    for n in range(1, 10):
        for k in range(5):
            for ell in range(n + 1):
                assert E_sum(n, k, ell) == gen_narayana(k, n, ell + 1)
    checked = 0
    for n in range(1, 9):
        for k in range(n + 1):
            for r in range(n + 2):
                value = gen_narayana(k, n, r)
                assert value == lattice_paths_count(n - 1, 2 * r - n + k - 1, k)
                checked += value != 0
    assert checked > 0


def test_8_fertility_upper_bounds():
    for n in range(1, 13):
        for k in range(min(5, n - 1) + 1):
            assert catalan_product_closed_form(n, k) == catalan_product_sum(n, k)
    for n in range(1, 8):
        for p in itertools.permutations(range(1, n + 1)):
            k = len(oracles.descents(p))
            prof = profile(p)
            assert prof.total <= fertility_upper_bound(n, k)
            for m in range(n):
                assert prof.by_descents.get(m, 0) <= fertility_descent_upper_bound(n, k, m)


def test_9_descent_symmetry():
    for n in range(1, 9):
        for p in itertools.permutations(range(1, n + 1)):
            by_d = profile(p).by_descents
            for m, c in by_d.items():
                assert c == by_d[n - 1 - m]


def test_10_recursive_bound_dominates():
    for t_plus_1 in (3, 4):
        for n in range(2, 10):
            report = bounds.theorem5_report(t_plus_1, n)
            assert report.certified, report.details
            assert Fraction(report.details["bound"]) >= int(report.details["exact"])


def test_11_theorem6_constant():
    report = bounds.theorem6_constant()
    assert abs(report.details["omega"] - 0.28839) <= 1e-5
    assert abs(report.value - 12.53296) <= 1e-5
    assert report.details["polynomial_residual"] < 1e-10
    assert report.certified


def test_12_lemma13_and_theorem7():
    scan = bounds.h_scan(resolution=10**4)
    assert abs(scan.value - 3.0894788) <= 1e-6
    gap = 3.08978 - (scan.value + 3 * 0.13 / 10**4)
    assert gap > 0
    assert scan.details["log_gap"] == pytest.approx(gap)
    assert scan.certified
    t7 = bounds.theorem7_constant(resolution=10**4)
    assert t7.certified and t7.value < 21.97225


def test_13_composition_expansion():
    for n in range(1, 9):
        assert composition_expansion(2, n) == count_direct(3, n)[0]
