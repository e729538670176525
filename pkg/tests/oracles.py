"""Brute-force reference implementations, written without the package.

Everything here follows the definitions literally and favours clarity over
speed; the tests compare the package against these on small inputs.
"""

from itertools import permutations, product
from math import comb


def stack_sort(p):
    stack, out = [], []
    for x in p:
        while stack and stack[-1] < x:
            out.append(stack.pop())
        stack.append(x)
    while stack:
        out.append(stack.pop())
    return tuple(out)


def iterate(p, t):
    for _ in range(t):
        p = stack_sort(p)
    return p


def is_identity(p):
    return list(p) == sorted(p)


def sortable_count(t, n):
    return sum(is_identity(iterate(p, t)) for p in permutations(range(1, n + 1)))


def descents(p):
    return [i for i in range(1, len(p)) if p[i - 1] > p[i]]


def interior_valleys(p):
    return [i for i in range(2, len(p)) if p[i - 1] < p[i - 2] and p[i - 1] < p[i]]


def padded_valleys(p):
    big = len(p) + 1
    q = (big, *p, big)
    return [i for i in range(1, len(p) + 1) if q[i] < q[i - 1] and q[i] < q[i + 1]]


def preimage_table(n):
    table = {}
    for s in permutations(range(1, n + 1)):
        table.setdefault(stack_sort(s), []).append(s)
    return table


def catalan(n):
    return comb(2 * n, n) // (n + 1)


# -- hook configurations, straight from the definition -------------------------


def _hook_ok(p, h):
    i, j = h
    return i < j and p[i - 1] < p[j - 1]


def is_valid(p, hooks, strict_heights=True):
    """Criteria (a)-(d); hooks are ``(i, j)`` position pairs in tuple order.

    With ``strict_heights`` the nesting rule only compares hooks of
    different heights.
    """
    if not all(_hook_ok(p, h) for h in hooks):
        return False
    sw = [i for i, _ in hooks]
    if any(a >= b for a, b in zip(sw, sw[1:])):
        return False
    D = set(descents(p))
    if not D <= set(sw):
        return False
    for _, j in hooks:
        into_j = [i for i, jj in hooks if jj == j]
        if j - 1 not in into_j or not any(i in D for i in into_j):
            return False
    for a, (i, j) in enumerate(hooks):
        for b, (i2, j2) in enumerate(hooks):
            if a == b:
                continue
            lower = p[j - 1] < p[j2 - 1] if strict_heights else p[j - 1] <= p[j2 - 1]
            overlap = min(j, j2) - max(i, i2) + 1
            if lower and overlap > 1 and not (i2 <= i and j <= j2):
                return False
    return True


def all_hook_tuples(p):
    """Every tuple of hooks with distinct, increasing southwest positions."""
    n = len(p)
    options = []
    for i in range(1, n + 1):
        options.append([None] + [(i, j) for j in range(i + 1, n + 1) if p[i - 1] < p[j - 1]])
    for choice in product(*options):
        yield tuple(h for h in choice if h is not None)


def vhc02_brute(p, strict_heights=True):
    found = []
    for hooks in all_hook_tuples(p):
        if not is_valid(p, hooks, strict_heights):
            continue
        ends = {}
        for _, j in hooks:
            ends[j] = ends.get(j, 0) + 1
        if all(c == 2 for c in ends.values()):
            found.append(hooks)
    return found


def coloring(p, hooks):
    """Colour points by moving straight up to the first hook top part."""
    n = len(p)
    colors = []
    for k in range(1, n + 1):
        ne = [r for r, (_, j) in enumerate(hooks, 1) if j == k]
        if ne:
            colors.append(max(ne))
            continue
        hits = []
        for r, (i, j) in enumerate(hooks, 1):
            # top part runs from x = i + 1/2 to x = j at height p_j
            if i + 0.5 <= k <= j and p[j - 1] > p[k - 1]:
                hits.append((p[j - 1], -i, r))
        colors.append(min(hits)[2] if hits else 0)
    return colors


def phi(p, hooks):
    colors = coloring(p, hooks)
    ne_colors = {colors[j - 1] for _, j in hooks}
    theta = [c for c in range(len(hooks) + 1) if c not in ne_colors]
    return tuple(colors.count(c) for c in theta)


def valid_compositions(p):
    return sorted(phi(p, H) for H in vhc02_brute(p))


def fertility_from_compositions(p):
    total = 0
    for q in valid_compositions(p):
        term = 1
        for x in q:
            term *= catalan(x)
        total += term
    return total
