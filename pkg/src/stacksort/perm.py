"""Permutations, the stack-sorting map, and the brute-force preimage oracle.

Positions and values are one-indexed everywhere in the public API: for a
permutation ``p``, ``p.entry(i)`` is the value at position ``i`` and a
descent ``i`` means ``p.entry(i) > p.entry(i + 1)``.  The tuple storage
underneath is the usual zero-indexed Python tuple.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from stacksort.config import check_cap
from stacksort.errors import InputError


class Permutation(tuple):
    """A bijection on ``{1, ..., n}`` in one-line notation.

    >>> p = Permutation.parse("35214")
    >>> p.entry(1), len(p)
    (3, 5)
    >>> str(Permutation(range(1, 11)))
    '1.2.3.4.5.6.7.8.9.10'
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int]):
        if isinstance(entries, Permutation):
            return entries
        try:
            values = tuple(int(x) for x in entries)
        except (TypeError, ValueError):
            raise InputError(f"permutation entries must be integers: {entries!r}") from None
        if not values:
            raise InputError("a permutation must have at least one entry")
        if sorted(values) != list(range(1, len(values) + 1)):
            raise InputError(f"not a permutation of 1..{len(values)}: {values!r}")
        return super().__new__(cls, values)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``"35214"`` (n <= 9) or dot-separated ``"2.7.3.5.9.10"``."""
        text = text.strip()
        if not text:
            raise InputError("empty permutation string")
        if "." in text:
            parts = text.split(".")
        else:
            parts = list(text)
        if not all(part.isdigit() for part in parts):
            raise InputError(f"malformed permutation string {text!r}")
        return cls(int(part) for part in parts)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @property
    def n(self) -> int:
        return len(self)

    def entry(self, i: int) -> int:
        """Value at one-indexed position ``i``."""
        if not 1 <= i <= len(self):
            raise InputError(f"position {i} outside 1..{len(self)}")
        return self[i - 1]

    def position(self, value: int) -> int:
        """One-indexed position of ``value``."""
        return self.index(value) + 1

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self, 1))

    def __str__(self) -> str:
        return format_permutation(self)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"


def format_permutation(entries: Sequence[int]) -> str:
    if len(entries) <= 9:
        return "".join(str(x) for x in entries)
    return ".".join(str(x) for x in entries)


def as_permutation(p) -> Permutation:
    if isinstance(p, Permutation):
        return p
    if isinstance(p, str):
        return Permutation.parse(p)
    return Permutation(p)


# -- the stack-sorting map ---------------------------------------------------


def _stack_sort(entries: Sequence[int]) -> tuple[int, ...]:
    # the stack is increasing from top to bottom; a larger incoming entry
    # pops everything smaller than it
    out = []
    stack = []
    for x in entries:
        while stack and stack[-1] < x:
            out.append(stack.pop())
        stack.append(x)
    out.extend(reversed(stack))
    return tuple(out)


def stack_sort(p) -> Permutation:
    """Apply the stack-sorting map once.

    >>> str(stack_sort("35214"))
    '31245'
    """
    return Permutation(_stack_sort(as_permutation(p)))


def stack_sort_iterated(p, t: int) -> Permutation:
    if t < 0:
        raise InputError(f"number of passes must be nonnegative, got {t}")
    entries = tuple(as_permutation(p))
    for _ in range(t):
        entries = _stack_sort(entries)
    return Permutation(entries)


def _is_identity(entries: Sequence[int]) -> bool:
    return all(x == i for i, x in enumerate(entries, 1))


def sorting_depth(p) -> int:
    """Smallest ``t >= 0`` with ``s^t(p)`` the identity (at most ``n - 1``)."""
    entries = tuple(p)
    t = 0
    while not _is_identity(entries):
        entries = _stack_sort(entries)
        t += 1
    return t


def is_t_stack_sortable(p, t: int) -> bool:
    if t < 1:
        raise InputError(f"t must be a positive integer, got {t}")
    entries = tuple(as_permutation(p))
    for _ in range(t):
        if _is_identity(entries):
            return True
        entries = _stack_sort(entries)
    return _is_identity(entries)


# -- statistics --------------------------------------------------------------


@dataclass(frozen=True)
class DescentData:
    """Descents ``d_1 < ... < d_k`` of a permutation of length ``n``."""

    positions: tuple[int, ...]
    n: int

    @property
    def k(self) -> int:
        return len(self.positions)

    @property
    def bounds(self) -> tuple[int, ...]:
        """``(d_0, d_1, ..., d_k, d_{k+1})`` with ``d_0 = 0`` and ``d_{k+1} = n``."""
        return (0, *self.positions, self.n)

    @property
    def runs(self) -> tuple[range, ...]:
        """The ``k + 1`` ascending runs as ranges of one-indexed positions."""
        b = self.bounds
        return tuple(range(b[j] + 1, b[j + 1] + 1) for j in range(self.k + 1))

    def run_of(self, position: int) -> int:
        """The one-indexed run ``j`` with ``d_{j-1} < position <= d_j``."""
        b = self.bounds
        for j in range(1, self.k + 2):
            if b[j - 1] < position <= b[j]:
                return j
        raise InputError(f"position {position} outside 1..{self.n}")

    def __iter__(self):
        return iter(self.positions)

    def __len__(self):
        return len(self.positions)

    def __contains__(self, i):
        return i in self.positions


def _descent_positions(entries: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i in range(1, len(entries)) if entries[i - 1] > entries[i])


def descents(p) -> DescentData:
    """Descents of ``p``; index ``n`` is never a descent.

    >>> descents("2.7.3.5.9.10.11.4.8.1.6.12.13.14.15.16").positions
    (2, 7, 9)
    """
    entries = as_permutation(p)
    return DescentData(_descent_positions(entries), len(entries))


def descent_count(entries: Sequence[int]) -> int:
    return sum(1 for a, b in zip(entries, entries[1:]) if a > b)


def valleys(p, padded: bool = False) -> tuple[int, ...]:
    """Valley positions of ``p``.

    By default a valley is an interior index ``i`` in ``2..n-1`` below both
    neighbours.  With ``padded=True`` the sentinels ``p_0 = p_{n+1} = +inf``
    are added, so positions 1 and n may also be valleys; this is the
    statistic the fertility valley formula actually counts.
    """
    entries = tuple(as_permutation(p))
    return _valleys(entries, padded)


def _valleys(entries: Sequence[int], padded: bool) -> tuple[int, ...]:
    n = len(entries)
    if padded:
        inf = n + 1
        ext = (inf, *entries, inf)
        return tuple(i for i in range(1, n + 1) if ext[i] < ext[i - 1] and ext[i] < ext[i + 1])
    return tuple(
        i for i in range(2, n) if entries[i - 1] < entries[i - 2] and entries[i - 1] < entries[i]
    )


def valley_count(entries: Sequence[int], padded: bool = False) -> int:
    return len(_valleys(entries, padded))


def ascending_runs(p) -> tuple[range, ...]:
    return descents(p).runs


# -- enumeration and the oracle ----------------------------------------------


def enumerate_permutations(n: int, first: int | None = None) -> Iterator[Permutation]:
    """All of ``S_n`` in lexicographic order, or the block starting with ``first``.

    The blocks for ``first = 1..n`` partition the full stream in order, which
    is how the direct counters split work across processes.
    """
    for entries in _raw_permutations(n, first):
        yield Permutation(entries)


def _raw_permutations(n: int, first: int | None = None) -> Iterator[tuple[int, ...]]:
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    if first is None:
        yield from itertools.permutations(range(1, n + 1))
        return
    if not 1 <= first <= n:
        raise InputError(f"prefix {first} outside 1..{n}")
    rest = [x for x in range(1, n + 1) if x != first]
    for tail in itertools.permutations(rest):
        yield (first, *tail)


def brute_force_preimages(p, cap: int | None = None) -> list[Permutation]:
    """Every ``sigma`` in ``S_n`` with ``s(sigma) = p``, lexicographically.

    >>> [str(s) for s in brute_force_preimages("213")]
    ['231']
    """
    p = as_permutation(p)
    check_cap("oracle", len(p), cap, what="brute-force preimages")
    target = tuple(p)
    return [Permutation(s) for s in _raw_permutations(len(p)) if _stack_sort(s) == target]


@lru_cache(maxsize=4)
def _preimage_map(n: int) -> dict[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    images: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for s in _raw_permutations(n):
        images.setdefault(_stack_sort(s), []).append(s)
    return {k: tuple(v) for k, v in images.items()}


def preimage_map(n: int, cap: int | None = None) -> dict[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """The oracle for a whole ``S_n`` at once: image -> its preimages (lex order).

    Equivalent to calling :func:`brute_force_preimages` on every permutation
    but needs only ``n!`` sorts instead of ``(n!)^2``.  Unsorted permutations
    are absent from the map.
    """
    check_cap("oracle", n, cap, what="brute-force preimage map")
    return _preimage_map(n)


def factorial(n: int) -> int:
    return math.factorial(n)
