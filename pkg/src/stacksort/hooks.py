"""Valid hook configurations and valid compositions.

A hook joins a southwest point ``(i, p_i)`` to a northeast point
``(j, p_j)`` with ``i < j`` and ``p_i < p_j``: up from the SW point, then
right.  A configuration in the ``{0,2}`` class has, for each descent
``d_l``, one hook ``d_l -> b_l`` and one hook ``b_l - 1 -> b_l``; it is
therefore determined by the tuple ``b = (b_1, ..., b_k)`` of northeast
positions.

Sizes of the colour classes that do not contain a northeast point form a
composition of ``n - k`` into ``k + 1`` parts (``phi``); its images are the
valid compositions that index the fertility sums.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from stacksort.errors import InputError
from stacksort.perm import DescentData, Permutation, as_permutation, descents

Point = tuple[int, int]


@dataclass(frozen=True, order=True)
class Hook:
    sw: Point
    ne: Point

    def __post_init__(self):
        (i, a), (j, b) = self.sw, self.ne
        if not (i < j and a < b):
            raise InputError(f"hook {self.sw} -> {self.ne} must go strictly up and to the right")

    @classmethod
    def on(cls, p: Sequence[int], i: int, j: int) -> "Hook":
        """The hook from position ``i`` to position ``j`` on ``p``'s diagram."""
        return cls((i, p[i - 1]), (j, p[j - 1]))

    @property
    def left(self) -> int:
        return self.sw[0]

    @property
    def right(self) -> int:
        return self.ne[0]

    @property
    def height(self) -> int:
        return self.ne[1]

    def covers(self, x: int, y: int) -> bool:
        """True if the point lies strictly below the hook's top part.

        The top part runs from ``(i + 1/2, p_j)`` to ``(j, p_j)``.
        """
        return self.left < x <= self.right and y < self.height


@dataclass(frozen=True)
class ValidHookConfiguration:
    """A member of the ``{0,2}`` class together with its colouring data.

    ``coloring[x - 1]`` is the colour index (0..m) of the point at position ``x``;
    colour ``r >= 1`` belongs to ``hooks[r - 1]``.
    """

    permutation: Permutation
    hooks: tuple[Hook, ...]
    b_tuple: tuple[int, ...]
    coloring: tuple[int, ...] = field(repr=False)
    theta: tuple[int, ...] = field(repr=False)
    hat_q: tuple[int, ...]

    @property
    def descents(self) -> tuple[int, ...]:
        return _descents(self.permutation)

    @property
    def northeast(self) -> tuple[int, ...]:
        return tuple(sorted(set(h.right for h in self.hooks)))

    @property
    def class_sizes(self) -> tuple[int, ...]:
        """``(q_0, ..., q_m)``: sizes of all colour classes."""
        sizes = [0] * (len(self.hooks) + 1)
        for c in self.coloring:
            sizes[c] += 1
        return tuple(sizes)

    def to_dict(self) -> dict:
        return {
            "permutation": str(self.permutation),
            "descents": list(self.descents),
            "b_tuple": list(self.b_tuple),
            "b_entries": [self.permutation[b - 1] for b in self.b_tuple],
            "hooks": [{"sw": list(h.sw), "ne": list(h.ne)} for h in self.hooks],
            "coloring": list(self.coloring),
            "theta": list(self.theta),
            "hat_q": list(self.hat_q),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class CanonicalData:
    """Data attached to the canonical configuration.

    ``b_star`` holds positions; ``b_star_entries`` the values at them.
    ``e[i-1]`` is the run containing ``b_star[i-1]`` and ``alpha[j-1]`` counts
    canonical northeast endpoints in run ``j`` (runs are numbered from 1).
    """

    b_star: tuple[int, ...]
    b_star_entries: tuple[int, ...]
    mu: tuple[int, ...]
    e: tuple[int, ...]
    alpha: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "b_star": list(self.b_star),
            "b_star_entries": list(self.b_star_entries),
            "mu": list(self.mu),
            "e": list(self.e),
            "alpha": list(self.alpha),
        }


def _descents(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i in range(1, len(p)) if p[i - 1] > p[i])


# -- Definition-level validation ---------------------------------------------


def _check_on_diagram(p: Sequence[int], hooks: Sequence[Hook]):
    n = len(p)
    for h in hooks:
        for x, y in (h.sw, h.ne):
            if not 1 <= x <= n or p[x - 1] != y:
                raise InputError(f"hook endpoint {(x, y)} is not a point of the diagram")


def is_valid_hook_configuration(p, hooks: Sequence[Hook]) -> bool:
    """Check the four criteria for a valid hook configuration.

    (a) southwest x-coordinates strictly increase along the tuple;
    (b) every descent is a southwest endpoint;
    (c) every northeast point ``j`` receives a hook from a descent and one
        from ``j - 1``;
    (d) a hook that overlaps a strictly higher hook in more than one
        position lies inside it.

    The height comparison in (d) is strict: two hooks sharing a northeast
    point share its height and are allowed to overlap.
    """
    p = as_permutation(p)
    hooks = tuple(hooks)
    _check_on_diagram(p, hooks)
    lefts = [h.left for h in hooks]
    if any(a >= b for a, b in zip(lefts, lefts[1:])):
        return False
    desc = set(descents(p).positions)
    if not desc <= set(lefts):
        return False
    incoming: dict[int, set[int]] = {}
    for h in hooks:
        incoming.setdefault(h.right, set()).add(h.left)
    for j, sources in incoming.items():
        if j - 1 not in sources or not (sources & desc):
            return False
    for h in hooks:
        for g in hooks:
            if h.height < g.height and _overlap(h, g) > 1:
                if not (g.left <= h.left and h.right <= g.right):
                    return False
    return True


def _overlap(h: Hook, g: Hook) -> int:
    return min(h.right, g.right) - max(h.left, g.left) + 1


def is_vhc_02(p, hooks: Sequence[Hook]) -> bool:
    """Valid, and every northeast point ends exactly two hooks."""
    if not is_valid_hook_configuration(p, hooks):
        return False
    ends: dict[int, int] = {}
    for h in hooks:
        ends[h.right] = ends.get(h.right, 0) + 1
    return all(c == 2 for c in ends.values())


# -- colouring ---------------------------------------------------------------


def color_diagram(p, hooks: Sequence[Hook]) -> tuple[int, ...]:
    """Colour every point by the first hook top part hit moving straight up.

    Simultaneous hits go to the hook whose southwest endpoint is farthest
    right; a point's own hook is ignored; no hit gives colour 0.  Northeast
    points take the largest ``r`` with ``hooks[r-1]`` ending there.
    """
    p = tuple(p)
    n = len(p)
    hooks = tuple(hooks)
    last_ending: dict[int, int] = {}
    for r, h in enumerate(hooks, 1):
        last_ending[h.right] = r
    colors = []
    for x in range(1, n + 1):
        if x in last_ending:
            colors.append(last_ending[x])
            continue
        y = p[x - 1]
        best = 0
        best_key = None
        for r, h in enumerate(hooks, 1):
            if h.left == x or not h.covers(x, y):
                continue
            key = (h.height, -h.left)
            if best_key is None or key < best_key:
                best, best_key = r, key
        colors.append(best)
    return tuple(colors)


def _theta(colors: Sequence[int], hooks: Sequence[Hook]) -> tuple[int, ...]:
    ne_colors = {colors[h.right - 1] for h in hooks}
    return tuple(c for c in range(len(hooks) + 1) if c not in ne_colors)


def build_vhc(p, b: Sequence[int]) -> ValidHookConfiguration:
    """Assemble the ``{0,2}`` configuration with northeast tuple ``b``.

    No validation beyond hook geometry; see :func:`is_vhc_02`.
    """
    p = as_permutation(p)
    d = _descents(p)
    b = tuple(b)
    if len(b) != len(d):
        raise InputError(f"b-tuple must have one entry per descent ({len(d)}), got {len(b)}")
    hooks = [Hook.on(p, dl, bl) for dl, bl in zip(d, b)]
    hooks += [Hook.on(p, bl - 1, bl) for bl in set(b)]
    hooks.sort(key=lambda h: h.left)
    hooks = tuple(hooks)
    colors = color_diagram(p, hooks)
    theta = _theta(colors, hooks)
    sizes = [0] * (len(hooks) + 1)
    for c in colors:
        sizes[c] += 1
    hat_q = tuple(sizes[c] for c in theta)
    return ValidHookConfiguration(p, hooks, b, colors, theta, hat_q)


def phi(H: ValidHookConfiguration) -> tuple[int, ...]:
    """Class sizes with the northeast-coloured classes removed."""
    return H.hat_q


# -- enumeration --------------------------------------------------------------


def _nested_ok(new: Hook, placed: Sequence[Hook]) -> bool:
    for g in placed:
        if new.height == g.height:
            continue
        lo, hi = (new, g) if new.height < g.height else (g, new)
        if _overlap(lo, hi) > 1 and not (hi.left <= lo.left and lo.right <= hi.right):
            return False
    return True


def _candidates(p: Sequence[int], d: int, used: set[int]):
    n = len(p)
    top = p[d - 1]
    highest = 0  # running max of entries strictly between d and j
    for j in range(d + 1, n + 1):
        y = p[j - 1]
        if y > top and y > highest and j not in used and p[j - 2] < y:
            yield j
        highest = max(highest, y)


def enumerate_vhc_02(p) -> list[ValidHookConfiguration]:
    """All configurations in the ``{0,2}`` class, sorted by b-tuple.

    Backtracks over northeast endpoints from the last descent to the first,
    pruning candidates that would leave a point above the hook or cross an
    already placed hook; every complete candidate is then checked against
    the full definition.
    """
    p = as_permutation(p)
    d = _descents(p)
    k = len(d)
    found = []
    b = [0] * k

    def extend(ell: int, placed: list[Hook], used: set[int]):
        if ell < 0:
            H = build_vhc(p, b)
            if is_vhc_02(p, H.hooks):
                found.append(H)
            return
        for j in _candidates(p, d[ell], used):
            new = (Hook.on(p, d[ell], j), Hook.on(p, j - 1, j))
            if not all(_nested_ok(h, placed) for h in new):
                continue
            b[ell] = j
            used.add(j)
            extend(ell - 1, placed + list(new), used)
            used.discard(j)

    extend(k - 1, [], set())
    found.sort(key=lambda H: H.b_tuple)
    return found


def valid_compositions(p) -> list[tuple[int, ...]]:
    """The valid compositions of ``p``, sorted lexicographically."""
    return sorted(phi(H) for H in enumerate_vhc_02(p))


def check_composition(p, q: Sequence[int]) -> tuple[int, ...]:
    """Validate that ``q`` is a composition of ``n - k`` into ``k + 1`` parts."""
    p = as_permutation(p)
    k = len(_descents(p))
    try:
        q = tuple(int(x) for x in q)
    except (TypeError, ValueError):
        raise InputError(f"composition parts must be integers: {q!r}") from None
    if len(q) != k + 1:
        raise InputError(f"composition must have k+1 = {k + 1} parts, got {len(q)}")
    if any(x < 1 for x in q):
        raise InputError(f"composition parts must be positive: {q}")
    if sum(q) != len(p) - k:
        raise InputError(f"composition must sum to n-k = {len(p) - k}, got {sum(q)}")
    return q


def reconstruct_vhc(p, q: Sequence[int]) -> ValidHookConfiguration | None:
    """Invert ``phi``: rebuild the configuration whose composition is ``q``.

    ``b_k = d_k + q_k + 1``; then each ``b_l`` is the first position after
    ``d_l`` once ``q_l`` points not lying under a later hook (and not a
    later northeast point) have been passed.  Returns ``None`` when no
    configuration maps to ``q``.
    """
    p = as_permutation(p)
    q = check_composition(p, q)
    d = _descents(p)
    n = len(p)
    k = len(d)
    b = [0] * k
    blocked: set[int] = set()
    for ell in range(k - 1, -1, -1):
        x = d[ell]
        passed = 0
        while True:
            x += 1
            if x > n:
                return None
            if x in blocked:
                continue
            if passed == q[ell + 1]:
                break
            passed += 1
        b[ell] = x
        blocked.update(range(d[ell] + 1, x + 1))
    if any(p[bl - 1] <= p[dl - 1] or p[bl - 2] >= p[bl - 1] for dl, bl in zip(d, b)):
        return None
    H = build_vhc(p, b)
    if not is_vhc_02(p, H.hooks) or H.hat_q != q:
        return None
    return H


# -- the canonical configuration ---------------------------------------------


def canonical_vhc(p) -> tuple[ValidHookConfiguration, CanonicalData] | None:
    """The canonical configuration: northeast endpoints chosen minimally.

    For ``l = k, ..., 1``, ``b*_l`` is the position of the smallest entry
    greater than ``p_{d_l}`` among the entries right of ``d_l`` that are
    neither an earlier-chosen endpoint nor under an earlier-chosen hook.
    Returns ``None`` exactly when the ``{0,2}`` class is empty.
    """
    p = as_permutation(p)
    dd: DescentData = descents(p)
    d = dd.positions
    n = len(p)
    k = len(d)
    b = [0] * k
    placed: list[Hook] = []
    for ell in range(k - 1, -1, -1):
        top = p[d[ell] - 1]
        chosen = set(b[ell + 1:])
        best = None
        for y in range(d[ell] + 1, n + 1):
            v = p[y - 1]
            if y in chosen or v <= top or any(h.covers(y, v) for h in placed):
                continue
            if best is None or v < p[best - 1]:
                best = y
        if best is None:
            return None
        b[ell] = best
        placed.append(Hook.on(p, d[ell], best))
    try:
        H = build_vhc(p, b)
    except InputError:
        return None
    if not is_vhc_02(p, H.hooks):
        return None
    e = tuple(dd.run_of(x) for x in b)
    alpha = tuple(sum(1 for ei in e if ei == j) for j in range(1, k + 2))
    data = CanonicalData(tuple(b), tuple(p[x - 1] for x in b), H.hat_q, e, alpha)
    return H, data


def check_composition_conditions(p, q: Sequence[int]) -> bool:
    """Test ``q`` against the inequalities built from the canonical data.

    (a) for each ``m`` in ``0..k``: ``sum_{j=m}^{e_m - 1} q_j >= sum_{j=m}^{e_m - 1} mu_j``;
    (b) for ``m <= r <= e_m - 2``:
        ``sum_{j=m}^{r} q_j >= d_{r+1} - d_m - sum_{j=m+1}^{r+1} alpha_j``.

    Colour 0 is treated as a hook reaching past the last run, ``e_0 = k + 1``;
    without the ``m = 0`` rows the conditions accept compositions whose first
    part is shorter than the first run.

    This characterisation is stated without proof in the literature; the
    test suite checks it against :func:`valid_compositions` exhaustively
    for small ``n``; production code paths do not depend on it.
    """
    p = as_permutation(p)
    q = check_composition(p, q)
    canon = canonical_vhc(p)
    if canon is None:
        raise InputError(f"{p} has no canonical configuration (it is not sorted)")
    _, data = canon
    bounds = descents(p).bounds
    mu, e, alpha = data.mu, data.e, data.alpha
    k = len(e)
    for m in range(0, k + 1):
        em = e[m - 1] if m else k + 1
        if sum(q[m:em]) < sum(mu[m:em]):
            return False
        for r in range(m, em - 1):
            # alpha is indexed from run 1
            if sum(q[m:r + 1]) < bounds[r + 1] - bounds[m] - sum(alpha[m:r + 1]):
                return False
    return True
