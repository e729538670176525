"""SVG drawing of a permutation diagram with a hook configuration.

One diagram unit is 24 px.  Hook ``r`` and the points of colour ``r`` share
``PALETTE[r % len(PALETTE)]``; colour 0 is drawn black.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from stacksort.hooks import ValidHookConfiguration

UNIT = 24
PALETTE = (
    "#000000", "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#e377c2",
    "#17becf", "#ff7f0e", "#8c564b", "#bcbd22", "#7f7f7f", "#393b79",
)


def color_of(index: int) -> str:
    return PALETTE[index % len(PALETTE)]


def render_svg(H: ValidHookConfiguration, title: str | None = None) -> str:
    p = H.permutation
    n = len(p)
    size = (n + 1) * UNIT

    def px(x, y):
        return x * UNIT, (n + 1 - y) * UNIT

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    if title:
        lines.append(f"<title>{escape(title)}</title>")
    for i in range(1, n + 1):
        x, _ = px(i, 0)
        _, y = px(0, i)
        lines.append(f'<line x1="{x}" y1="{UNIT // 2}" x2="{x}" y2="{size - UNIT // 2}" stroke="#eeeeee"/>')
        lines.append(f'<line x1="{UNIT // 2}" y1="{y}" x2="{size - UNIT // 2}" y2="{y}" stroke="#eeeeee"/>')
    for r, h in enumerate(H.hooks, 1):
        x0, y0 = px(*h.sw)
        x1, y1 = px(h.left, h.height)
        x2, y2 = px(*h.ne)
        lines.append(
            f'<polyline points="{x0},{y0} {x1},{y1} {x2},{y2}" fill="none" '
            f'stroke="{color_of(r)}" stroke-width="2" data-hook="{r}"/>'
        )
    for x, c in enumerate(H.coloring, 1):
        cx, cy = px(x, p[x - 1])
        lines.append(f'<circle cx="{cx}" cy="{cy}" r="5" fill="{color_of(c)}" data-color="{c}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
