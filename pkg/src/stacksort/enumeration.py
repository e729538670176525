"""Exact counts of t-stack-sortable permutations, two independent ways.

``direct`` iterates ``S_n`` and applies the stack-sorting map; the
``fertility-sum`` route adds up fertilities of t-sortable permutations
ending in ``n``.  Count tables persist as JSON with decimal-string counts.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from stacksort.config import check_cap
from stacksort.counting import binom, catalan, exact_int
from stacksort.errors import InputError, TableFormatError
from stacksort.fertility import fertility, fertility_by_descents
from stacksort.hooks import valid_compositions
from stacksort.perm import _is_identity, _raw_permutations, _stack_sort, descent_count

SCHEMA_VERSION = 1
METHODS = ("direct", "fertility-sum", "merged")


def _depth(entries: tuple[int, ...]) -> int:
    t = 0
    while not _is_identity(entries):
        entries = _stack_sort(entries)
        t += 1
    return t


def _sortable(entries: tuple[int, ...], t: int) -> bool:
    for _ in range(t):
        if _is_identity(entries):
            return True
        entries = _stack_sort(entries)
    return _is_identity(entries)


def _tally_block(n: int, first: int | None) -> Counter:
    tally: Counter = Counter()
    for s in _raw_permutations(n, first):
        tally[_depth(s), descent_count(s)] += 1
    return tally


_DEPTH_CACHE: dict[int, dict[tuple[int, int], int]] = {}
_STATS_CACHE: dict[tuple[int, int], dict[tuple[int, ...], int]] = {}


def depth_tally(n: int, workers: int = 1) -> dict[tuple[int, int], int]:
    """``(sorting depth, descents) -> number of permutations`` over ``S_n``.

    The sorting depth is the least ``t`` with ``s^t`` the identity.  With
    ``workers > 1`` the first-entry blocks are farmed out to processes.
    """
    if n in _DEPTH_CACHE:
        return _DEPTH_CACHE[n]
    if workers > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_tally_block, [n] * n, range(1, n + 1)))
        total: Counter = Counter()
        for part in parts:
            total.update(part)
    else:
        total = _tally_block(n, None)
    _DEPTH_CACHE[n] = dict(sorted(total.items()))
    return _DEPTH_CACHE[n]


def count_direct(t: int, n: int, cap: int | None = None, workers: int = 1) -> tuple[int, dict[int, int]]:
    """``(W_t(n), {k: W_t(n, k)})`` by iterating ``S_n``."""
    if t < 1:
        raise InputError(f"t must be positive, got {t}")
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    check_cap("direct", n, cap, what="direct iteration over S_n")
    by_k = {k: 0 for k in range(n)}
    for (depth, k), count in depth_tally(n, workers).items():
        if depth <= t:
            by_k[k] += count
    return sum(by_k.values()), by_k


def _sortable_ending_in_n(t: int, n: int) -> Iterable[tuple[int, ...]]:
    # Y_t(n, .): sigma followed by n with sigma t-sortable of length n - 1
    if n == 1:
        yield (1,)
        return
    for s in _raw_permutations(n - 1):
        if _sortable(s, t):
            yield (*s, n)


def count_via_fertility(t_plus_1: int, n: int, cap: int | None = None) -> int:
    """``W_{t+1}(n)`` as the total fertility of ``t``-sortable permutations ending in ``n``."""
    t = t_plus_1 - 1
    if t < 0:
        raise InputError(f"level must be at least 1, got {t_plus_1}")
    check_cap("direct", n, cap, what="fertility summation")
    return sum(fertility(s) for s in _sortable_ending_in_n(t, n))


def count_via_fertility_by_descents(t_plus_1: int, n: int, cap: int | None = None) -> dict[int, int]:
    """``{m: W_{t+1}(n, m)}`` by summing descent-refined fertilities."""
    t = t_plus_1 - 1
    if t < 0:
        raise InputError(f"level must be at least 1, got {t_plus_1}")
    check_cap("direct", n, cap, what="fertility summation")
    by_m = {m: 0 for m in range(n)}
    for s in _sortable_ending_in_n(t, n):
        for m in range(n):
            by_m[m] += fertility_by_descents(s, m)
    return by_m


def w2_closed_form(n: int) -> int:
    """``W_2(n) = 2 / ((n+1)(2n+1)) binom(3n, n)``."""
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    return exact_int(Fraction(2 * binom(3 * n, n), (n + 1) * (2 * n + 1)), f"W_2({n})")


def w2_by_descents(n: int, k: int) -> int:
    """``W_2(n, k) = binom(2n-k-1, k) binom(n+k, n-k) / ((k+1)(2k+1))``."""
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    if k < 0:
        return 0
    value = Fraction(binom(2 * n - k - 1, k) * binom(n + k, n - k), (k + 1) * (2 * k + 1))
    return exact_int(value, f"W_2({n},{k})")


# -- M_t(q) ------------------------------------------------------------------


def composition_stats(t: int, n: int, cap: int | None = None) -> dict[tuple[int, ...], int]:
    """``q -> M_t(q)`` for every composition ``q`` with implied length ``n``."""
    if t < 1:
        raise InputError(f"t must be positive, got {t}")
    check_cap("direct", n, cap, what="M_t(q) enumeration")
    if (t, n) not in _STATS_CACHE:
        stats: Counter = Counter()
        for s in _raw_permutations(n):
            if _sortable(s, t):
                stats.update(valid_compositions(s))
        _STATS_CACHE[t, n] = dict(sorted(stats.items()))
    return _STATS_CACHE[t, n]


def implied_length(q: Sequence[int]) -> int:
    return sum(q) + len(q) - 1


def m_t_of_q(t: int, q: Sequence[int], cap: int | None = None) -> int:
    """Number of ``t``-sortable permutations having ``q`` as a valid composition."""
    q = tuple(int(x) for x in q)
    if not q or any(x < 1 for x in q):
        raise InputError(f"not a composition: {q}")
    return composition_stats(t, implied_length(q), cap).get(q, 0)


def composition_expansion(t: int, n: int, cap: int | None = None) -> int:
    """``sum_q M_t(q) prod C_{q_i}`` over compositions with implied length ``n``.

    Equals ``W_{t+1}(n)``.
    """
    total = 0
    for q, count in composition_stats(t, n, cap).items():
        term = count
        for part in q:
            term *= catalan(part)
        total += term
    return total


# -- tables ------------------------------------------------------------------


@dataclass
class CountTable:
    """Exact ``W_t(n)`` (key ``(t, n)``) and ``W_t(n, k)`` (key ``(t, n, k)``)."""

    entries: dict[tuple[int, ...], int] = field(default_factory=dict)
    method: str = "direct"
    created: str | None = None

    def w(self, t: int, n: int) -> int:
        return self.entries[(t, n)]

    def row(self, t: int, n: int) -> dict[int, int]:
        return {key[2]: v for key, v in sorted(self.entries.items()) if len(key) == 3 and key[:2] == (t, n)}

    def max_n(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for key in self.entries:
            out[key[0]] = max(out.get(key[0], 0), key[1])
        return dict(sorted(out.items()))

    def to_dict(self) -> dict:
        rows = []
        for key in sorted(self.entries, key=lambda k: (k[0], k[1], -1 if len(k) == 2 else k[2])):
            row = {"t": key[0], "n": key[1]}
            if len(key) == 3:
                row["k"] = key[2]
            row["count"] = str(self.entries[key])
            rows.append(row)
        out = {"schema_version": SCHEMA_VERSION, "method": self.method, "entries": rows}
        if self.created is not None:
            out["created"] = self.created
        return out


def build_table(t_max: int, n_max: int, method: str = "direct", cap: int | None = None, workers: int = 1) -> CountTable:
    table = CountTable(method=method)
    for n in range(1, n_max + 1):
        for t in range(1, t_max + 1):
            if method == "direct":
                total, by_k = count_direct(t, n, cap, workers)
            elif method == "fertility-sum":
                total = count_via_fertility(t, n, cap)
                by_k = count_via_fertility_by_descents(t, n, cap)
            else:
                raise InputError(f"unknown method {method!r}; expected direct or fertility-sum")
            table.entries[(t, n)] = total
            for k, v in by_k.items():
                table.entries[(t, n, k)] = v
    return table


def save_table(table: CountTable, path) -> None:
    if table.created is None:
        table.created = datetime.now(timezone.utc).replace(microsecond=0).isoformat()
    Path(path).write_text(json.dumps(table.to_dict(), indent=1) + "\n")


def table_from_dict(data) -> CountTable:
    if not isinstance(data, dict):
        raise TableFormatError("table must be a JSON object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise TableFormatError(f"unsupported schema_version {version!r}; expected {SCHEMA_VERSION}")
    method = data.get("method")
    if method not in METHODS:
        raise TableFormatError(f"unknown method {method!r}")
    entries = {}
    for i, row in enumerate(data.get("entries", [])):
        try:
            key = (int(row["t"]), int(row["n"])) + ((int(row["k"]),) if "k" in row else ())
            count = int(row["count"])
        except (KeyError, TypeError, ValueError) as exc:
            raise TableFormatError(f"bad entry #{i}: {exc!r}") from None
        if count < 0:
            raise TableFormatError(f"bad entry #{i}: negative count")
        entries[key] = count
    return CountTable(entries, method, data.get("created"))


def load_table(path) -> CountTable:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"{path}: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return table_from_dict(data)


def merge_tables(a: CountTable, b: CountTable) -> CountTable:
    """Union of two tables; a key present in both must agree."""
    entries = dict(a.entries)
    for key, value in b.entries.items():
        if key in entries and entries[key] != value:
            raise InputError(f"tables disagree at {key}: {entries[key]} vs {value}")
        entries[key] = value
    method = a.method if a.method == b.method else "merged"
    return CountTable(entries, method)


def table_to_csv(table: CountTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "n", "k", "count"])
    for row in table.to_dict()["entries"]:
        writer.writerow([row["t"], row["n"], row.get("k", ""), row["count"]])
    return buf.getvalue()


def bona_report(table: CountTable) -> list[dict]:
    """Compare each ``W_t(n)`` against the conjectured ``binom((t+1)n, n)``."""
    rows = []
    for key in sorted(k for k in table.entries if len(k) == 2):
        t, n = key
        bound = binom((t + 1) * n, n)
        count = table.entries[key]
        rows.append({"t": t, "n": n, "count": count, "bound": bound,
                     "status": "observed" if count <= bound else "violated"})
    return rows


def factorial_ceiling_holds(table: CountTable) -> bool:
    for (t, n), value in ((k, v) for k, v in table.entries.items() if len(k) == 2):
        if value > math.factorial(n):
            return False
        nxt = table.entries.get((t + 1, n))
        if nxt is not None and nxt < value:
            return False
    return True
