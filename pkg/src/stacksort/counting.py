"""Exact combinatorial kernels over Python integers.

Division-bearing closed forms are evaluated as :class:`fractions.Fraction`
and checked integral before narrowing to ``int``, so an index slip shows up
as a :class:`NumericError` instead of a silently truncated count.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from stacksort.config import check_cap
from stacksort.errors import DomainError, NumericError


def exact_int(value: Fraction, what: str = "value") -> int:
    value = Fraction(value)
    if value.denominator != 1:
        raise NumericError(f"{what} = {value} is not an integer")
    return value.numerator


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero whenever ``b < 0``, ``b > a`` or ``a < 0``."""
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


@lru_cache(maxsize=None)
def catalan(i: int) -> int:
    if i < 0:
        raise DomainError(f"Catalan index must be nonnegative, got {i}")
    return exact_int(Fraction(binom(2 * i, i), i + 1), f"C_{i}")


def narayana(i: int, j: int) -> int:
    """``N(i, j) = binom(i, j) binom(i, j - 1) / i``; zero off its support."""
    if i < 1:
        raise DomainError(f"N(i, j) is undefined for i = {i} < 1")
    return exact_int(Fraction(binom(i, j) * binom(i, j - 1), i), f"N({i},{j})")


def gen_narayana(k: int, n: int, r: int) -> int:
    """Generalized Narayana ``N_k(n, r) = (k+1)/n binom(n, r+k) binom(n, r-1)``."""
    if n < 1:
        raise DomainError(f"N_k(n, r) is undefined for n = {n} < 1")
    return exact_int(Fraction((k + 1) * binom(n, r + k) * binom(n, r - 1), n), f"N_{k}({n},{r})")


def catalan_power_coeff(r: int, m: int) -> int:
    """``[x^m] C(x)^r = r/(m+r) binom(2m+r-1, m)`` for ``r >= 1``."""
    if r < 1:
        raise DomainError(f"power r must be positive, got {r}")
    if m < 0:
        return 0
    return exact_int(Fraction(r * binom(2 * m + r - 1, m), m + r), f"[x^{m}]C(x)^{r}")


# -- compositions ------------------------------------------------------------


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` into ``parts`` positive parts, lex order."""
    if parts <= 0:
        if total == 0 and parts == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first, *rest)


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` nonnegative parts."""
    if parts <= 0:
        if total == 0 and parts == 0:
            yield ()
        return
    if parts == 1:
        if total >= 0:
            yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first, *rest)


def catalan_product_sum(n: int, k: int) -> int:
    """Direct sum over compositions ``(i_0..i_k)`` of ``n - k`` of ``prod C_{i_t}``."""
    total = 0
    for comp in compositions(n - k, k + 1):
        term = 1
        for part in comp:
            term *= catalan(part)
        total += term
    return total


def catalan_product_closed_form(n: int, k: int) -> int:
    """``(2k+2)/(n+1) binom(2n-2k-1, n)``, the closed form of the sum above."""
    return exact_int(Fraction((2 * k + 2) * binom(2 * n - 2 * k - 1, n), n + 1), f"Cor1({n},{k})")


def E_sum(n: int, k: int, ell: int) -> int:
    """``E(n, k, l)``: the direct double sum of ``prod N(i_t, j_t + 1)`` over
    compositions ``(i_t)`` of ``n`` into ``k + 1`` parts and weak
    compositions ``(j_t)`` of ``l`` into ``k + 1`` parts."""
    if n < 1 or k < 0 or ell < 0:
        raise DomainError(f"E(n, k, l) needs n >= 1, k >= 0, l >= 0; got ({n}, {k}, {ell})")
    total = 0
    weak = list(weak_compositions(ell, k + 1))
    for comp in compositions(n, k + 1):
        for js in weak:
            term = 1
            for i, j in zip(comp, js):
                term *= narayana(i, j + 1)
                if not term:
                    break
            total += term
    return total


# -- lattice paths -----------------------------------------------------------

STEPS = ((1, 0), (0, 1), (-1, 0), (0, -1))


def lattice_paths_count(p: int, u: int, v: int, cap: int | None = None) -> int:
    """``|L_p(u, v)|``: paths from the origin to ``(u, v)`` with exactly ``p``
    unit steps N/E/S/W that never go below the x-axis.

    Depth-first over step sequences, memoised on (steps left, position) and
    pruned when the target is out of reach.
    """
    check_cap("paths", p, cap, what="lattice path enumeration")
    if p < 0:
        return 0

    @lru_cache(maxsize=None)
    def walk(left: int, x: int, y: int) -> int:
        dist = abs(u - x) + abs(v - y)
        if dist > left or (left - dist) % 2:
            return 0
        if left == 0:
            return 1
        count = 0
        for dx, dy in STEPS:
            if y + dy >= 0:
                count += walk(left - 1, x + dx, y + dy)
        return count

    return walk(p, 0, 0)


def enumerate_lattice_paths(p: int, u: int, v: int, cap: int | None = None) -> Iterator[tuple[tuple[int, int], ...]]:
    """The paths counted by :func:`lattice_paths_count`, as step tuples."""
    check_cap("paths", p, cap, what="lattice path enumeration")

    def walk(left, x, y, prefix):
        dist = abs(u - x) + abs(v - y)
        if dist > left or (left - dist) % 2:
            return
        if left == 0:
            yield tuple(prefix)
            return
        for step in STEPS:
            if y + step[1] >= 0:
                prefix.append(step)
                yield from walk(left - 1, x + step[0], y + step[1], prefix)
                prefix.pop()

    yield from walk(p, 0, 0, [])
