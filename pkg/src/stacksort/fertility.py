"""Preimage counts of a permutation from its valid compositions.

Every count is a sum over ``V(p)`` of a product of per-part factors; the
weak-composition sums in the descent and valley refinements are carried
out as products of per-part polynomials, which enumerates exactly the same
index tuples.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from stacksort.counting import binom, catalan, exact_int, gen_narayana, narayana
from stacksort.errors import ConfigurationError, InputError
from stacksort.hooks import valid_compositions
from stacksort.perm import as_permutation, descents


class ValleyConvention(enum.Enum):
    """Meaning of the factor ``binom(q - 1, -2) * C_{-1}`` at a ``j_t = 0`` term.

    ``ZERO`` makes such terms vanish, so every part carries ``j_t >= 1``.
    With it the formula counts valleys under the sentinels
    ``sigma_0 = sigma_{n+1} = +inf`` (so every permutation has at least
    one); that pairing is checked exhaustively against brute force.  No
    convention recovers the count of interior valleys only.
    """

    ZERO = "zero"
    UNIT = "unit"


VALIDATED_CONVENTIONS = frozenset({ValleyConvention.ZERO})
DEFAULT_VALLEY_CONVENTION = ValleyConvention.ZERO
# the valley statistic the formula counts under the validated convention
VALLEY_STATISTIC = "padded"


def _poly_mul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _coefficient(polys, degree: int):
    if degree < 0:
        return 0
    acc = [1]
    for poly in polys:
        acc = _poly_mul(acc, poly)
    return acc[degree] if degree < len(acc) else 0


@lru_cache(maxsize=None)
def _narayana_poly(q: int) -> tuple[int, ...]:
    # coefficient of x^j is N(q, j + 1)
    return tuple(narayana(q, j + 1) for j in range(q))


@lru_cache(maxsize=None)
def _valley_poly(q: int, convention: ValleyConvention) -> tuple:
    # coefficient of x^j is binom(q - 1, 2j - 2) * C_{j - 1}
    zero_term = 0 if convention is ValleyConvention.ZERO else 1
    return (zero_term,) + tuple(binom(q - 1, 2 * j - 2) * catalan(j - 1) for j in range(1, (q + 1) // 2 + 1))


def fertility(p) -> int:
    """Number of preimages of ``p`` under the stack-sorting map.

    >>> fertility("123"), fertility("21")
    (5, 0)
    """
    total = 0
    for q in valid_compositions(p):
        term = 1
        for part in q:
            term *= catalan(part)
        total += term
    return total


def _by_descents(p, V, m: int) -> int:
    n = len(p)
    k = len(descents(p))
    if m < k or m > n - 1 - k:
        return 0
    return sum(_coefficient([_narayana_poly(x) for x in q], m - k) for q in V)


def fertility_by_descents(p, m: int) -> int:
    """Preimages of ``p`` with exactly ``m`` descents."""
    p = as_permutation(p)
    return _by_descents(p, valid_compositions(p), m)


def _by_valleys(p, V, m: int, convention: ValleyConvention):
    n = len(p)
    weighted = 0
    for q in V:
        weighted += _coefficient([_valley_poly(x, convention) for x in q], m)
    if not weighted:
        return 0
    value = Fraction(weighted) * Fraction(2) ** (n - 2 * m + 1)
    if convention is ValleyConvention.ZERO:
        return exact_int(value, "valley count")
    return value.numerator if value.denominator == 1 else value


def _check_convention(convention, strict: bool) -> ValleyConvention:
    convention = ValleyConvention(convention)
    if strict and convention not in VALIDATED_CONVENTIONS:
        raise ConfigurationError(
            f"valley convention {convention.value!r} has not been validated against the oracle; "
            "pass strict=False to evaluate it anyway"
        )
    return convention


def preimages_by_valleys(p, m: int, convention=DEFAULT_VALLEY_CONVENTION, strict: bool = True):
    """Value of the valley formula ``2^{n-2m+1} sum prod binom(q_t-1, 2j_t-2) C_{j_t-1}``.

    Under the default convention this is the number of preimages of ``p``
    with exactly ``m`` valleys in the padded sense of
    :func:`stacksort.perm.valleys`.  Under an unvalidated convention with
    ``strict=False`` the result may be a non-integral ``Fraction``.
    """
    p = as_permutation(p)
    convention = _check_convention(convention, strict)
    if m < 0:
        return 0
    return _by_valleys(p, valid_compositions(p), m, convention)


def fertility_upper_bound(n: int, k: int) -> int:
    """``(2k+2)/(n+1) binom(2n-2k-1, n)``, a bound on ``F(p)`` over ``p`` with ``k`` descents."""
    if not 0 <= k <= n - 1:
        raise InputError(f"need 0 <= k <= n-1, got n={n}, k={k}")
    return exact_int(Fraction((2 * k + 2) * binom(2 * n - 2 * k - 1, n), n + 1), "fertility bound")


def fertility_descent_upper_bound(n: int, k: int, m: int) -> int:
    """``N_k(n-k, m-k+1)``, a bound on ``F(p, m)`` over ``p`` with ``k`` descents."""
    if not 0 <= k <= n - 1:
        raise InputError(f"need 0 <= k <= n-1, got n={n}, k={k}")
    value = Fraction((k + 1) * binom(n - k, m + 1) * binom(n - k, m - k), n - k)
    bound = exact_int(value, "descent fertility bound")
    assert bound == gen_narayana(k, n - k, m - k + 1)
    return bound


@dataclass(frozen=True)
class FertilityProfile:
    permutation: str
    n: int
    k: int
    total: int
    by_descents: dict[int, int] = field(default_factory=dict)
    by_valleys: dict[int, int] = field(default_factory=dict)
    valley_convention: str = DEFAULT_VALLEY_CONVENTION.value
    provisional: bool = False

    def to_dict(self) -> dict:
        return {
            "permutation": self.permutation,
            "n": self.n,
            "k": self.k,
            "total": str(self.total),
            "by_descents": {str(m): str(c) for m, c in sorted(self.by_descents.items())},
            "by_valleys": {str(m): str(c) for m, c in sorted(self.by_valleys.items())},
            "valley_convention": self.valley_convention,
            "valley_statistic": VALLEY_STATISTIC,
            "provisional": self.provisional,
        }


def profile(p, convention=DEFAULT_VALLEY_CONVENTION, strict: bool = True) -> FertilityProfile:
    """All three preimage counts for ``p``.

    ``by_descents`` covers ``m`` in ``[k, n-1-k]`` and ``by_valleys`` covers
    ``m`` in ``[k+1, (n+1)//2]``; both maps are empty when ``p`` is not sorted.
    """
    p = as_permutation(p)
    convention = _check_convention(convention, strict)
    n = len(p)
    k = len(descents(p))
    V = valid_compositions(p)
    total = fertility(p)
    by_descents = {}
    by_valleys = {}
    if V:
        by_descents = {m: _by_descents(p, V, m) for m in range(k, n - k)}
        by_valleys = {m: _by_valleys(p, V, m, convention) for m in range(k + 1, (n + 1) // 2 + 1)}
    return FertilityProfile(
        str(p), n, k, total, by_descents, by_valleys,
        valley_convention=convention.value,
        provisional=convention not in VALIDATED_CONVENTIONS,
    )
