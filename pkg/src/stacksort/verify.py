"""Identity and property checks behind ``stacksort verify``.

Each check returns a :class:`Check`; the CLI prints them as a pass/fail
matrix.  Sizes are kept small by default so the whole matrix runs in
seconds; the test suite runs the same properties at full size.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterator

from stacksort import bounds, counting, enumeration, hooks
from stacksort.fertility import fertility_by_descents, preimages_by_valleys, profile
from stacksort.perm import Permutation, descent_count, preimage_map, valley_count


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _check(name: str, fn: Callable[[], tuple[bool, str] | bool]) -> Check:
    result = fn()
    if isinstance(result, tuple):
        return Check(name, bool(result[0]), result[1])
    return Check(name, bool(result))


def identity_checks(max_n: int = 9) -> Iterator[Check]:
    C = counting.catalan

    yield _check("catalan convolution", lambda: all(
        sum(C(a) * C(i - 1 - a) for a in range(i)) == C(i) for i in range(1, 13)))
    yield _check("narayana row sums", lambda: all(
        sum(counting.narayana(i, j) for j in range(i + 2)) == C(i) for i in range(1, 13)))
    yield _check("generalized narayana = lattice paths", lambda: all(
        counting.gen_narayana(k, n, r) == counting.lattice_paths_count(n - 1, 2 * r - n + k - 1, k)
        for n in range(1, min(max_n, 8) + 1) for k in range(0, n + 1) for r in range(0, n + 2)))
    yield _check("E(n,k,l) = N_k(n,l+1)", lambda: all(
        counting.E_sum(n, k, ell) == counting.gen_narayana(k, n, ell + 1)
        for n in range(1, max_n + 1) for k in range(5) for ell in range(n + 1)))
    yield _check("catalan product sum closed form", lambda: all(
        counting.catalan_product_sum(n, k) == counting.catalan_product_closed_form(n, k)
        == counting.catalan_power_coeff(2 * k + 2, n - 2 * k - 1)
        for n in range(1, 13) for k in range(min(5, n - 1) + 1)))
    yield _check("W_2 closed forms agree", lambda: all(
        sum(enumeration.w2_by_descents(n, k) for k in range(n)) == enumeration.w2_closed_form(n)
        for n in range(1, 13)))
    yield _check("factorial bounds r <= 200", lambda: all(bounds.stirling_bounds_check(r) for r in range(201)))


def property_checks(max_n: int = 6) -> Iterator[Check]:
    def oracle_equivalence():
        for n in range(1, max_n + 1):
            pm = preimage_map(n)
            for s in itertools.permutations(range(1, n + 1)):
                pre = pm.get(s, ())
                prof = profile(s)
                if prof.total != len(pre):
                    return False, f"F({Permutation(s)})"
                by_d = Counter(descent_count(x) for x in pre)
                by_v = Counter(valley_count(x, padded=True) for x in pre)
                if any(fertility_by_descents(s, m) != by_d.get(m, 0) for m in range(n)):
                    return False, f"F({Permutation(s)}, m)"
                if any(preimages_by_valleys(s, m) != by_v.get(m, 0) for m in range(n + 2)):
                    return False, f"valleys({Permutation(s)})"
        return True, f"n <= {max_n}"

    def lemma1():
        for n in range(1, max_n + 1):
            for s in itertools.permutations(range(1, n + 1)):
                configs = hooks.enumerate_vhc_02(s)
                images = [hooks.phi(H) for H in configs]
                if len(set(images)) != len(images):
                    return False, f"phi not injective on {Permutation(s)}"
                for H in configs:
                    if hooks.reconstruct_vhc(s, H.hat_q) != H:
                        return False, f"round trip fails on {Permutation(s)}"
        return True, f"n <= {max_n}"

    def canonical():
        for n in range(1, max_n + 1):
            for s in itertools.permutations(range(1, n + 1)):
                configs = hooks.enumerate_vhc_02(s)
                canon = hooks.canonical_vhc(s)
                if (canon is None) != (not configs):
                    return False, str(Permutation(s))
                if canon and canon[0] not in configs:
                    return False, str(Permutation(s))
        return True, f"n <= {max_n}"

    def conditions():
        for n in range(1, max_n + 1):
            for s in itertools.permutations(range(1, n + 1)):
                V = set(hooks.valid_compositions(s))
                if not V:
                    continue
                k = len(next(iter(V))) - 1
                for q in counting.compositions(n - k, k + 1):
                    if hooks.check_composition_conditions(s, q) != (q in V):
                        return False, f"{Permutation(s)} {q}"
        return True, f"n <= {max_n}"

    def symmetry():
        for n in range(1, max_n + 1):
            for s in itertools.permutations(range(1, n + 1)):
                prof = profile(s)
                if any(prof.by_descents[m] != prof.by_descents[n - 1 - m] for m in prof.by_descents):
                    return False, str(Permutation(s))
        return True, f"n <= {max_n}"

    def methods():
        for n in range(1, max_n + 1):
            for t in (1, 2, 3):
                if enumeration.count_direct(t + 1, n)[0] != enumeration.count_via_fertility(t + 1, n):
                    return False, f"t+1={t + 1}, n={n}"
            if enumeration.composition_expansion(2, n) != enumeration.count_direct(3, n)[0]:
                return False, f"expansion n={n}"
        return True, f"n <= {max_n}"

    def theorem5():
        for n in range(2, max_n + 1):
            for t1 in (2, 3, 4):
                if not bounds.theorem5_report(t1, n).certified:
                    return False, f"t+1={t1}, n={n}"
        return True, f"n <= {max_n}"

    yield _check("fertility = brute force (total, descents, padded valleys)", oracle_equivalence)
    yield _check("phi injective and reconstruct o phi = id", lemma1)
    yield _check("canonical configuration is a member", canonical)
    yield _check("composition conditions characterise V", conditions)
    yield _check("F(p, m) = F(p, n - m - 1)", symmetry)
    yield _check("direct = fertility-sum = composition expansion", methods)
    yield _check("recursive bound dominates exact counts", theorem5)


def bound_checks() -> Iterator[Check]:
    for report in (bounds.theorem6_constant(), bounds.h_scan(), bounds.theorem7_constant()):
        yield Check(report.name, report.certified, f"value={report.value!r}")


def run(target: str = "all", max_n: int | None = None) -> list[Check]:
    checks: list[Check] = []
    if target in ("identities", "all"):
        checks += identity_checks(max_n or 9)
    if target in ("properties", "all"):
        checks += property_checks(max_n or 6)
    if target in ("bounds", "all"):
        checks += bound_checks()
    return checks
