"""Static SVG arc diagrams of book embeddings.

Vertices sit on a horizontal spine in embedding order; every edge is a
half-circle above it, coloured by page. Output is plain SVG 1.1 built from
strings so that identical embeddings give identical bytes.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .validate import BookEmbedding, compact

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
    "#8c6d31", "#843c39", "#7b4173", "#3182bd", "#e6550d", "#31a354",
    "#756bb1", "#636363", "#6baed6", "#fd8d3c", "#74c476", "#9e9ac8",
)

STEP = 24.0
MARGIN = 20.0


def page_color(i: int) -> str:
    return PALETTE[i % len(PALETTE)]


def _num(x: float) -> str:
    return f"{x:.1f}".rstrip("0").rstrip(".")


def render_svg(be: BookEmbedding, title: str | None = None, labels: bool = True) -> str:
    be = compact(be)
    pos = be.position()
    n = len(be.order)
    longest = max((abs(pos[u] - pos[v]) for u, v in be.edges()), default=1)
    width = 2 * MARGIN + STEP * max(n - 1, 1)
    base = MARGIN + STEP * longest / 2
    height = base + MARGIN + (14 if labels else 0)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_num(width)}" height="{_num(height)}" viewBox="0 0 {_num(width)} {_num(height)}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<line x1="{_num(MARGIN)}" y1="{_num(base)}" x2="{_num(width - MARGIN)}" '
               f'y2="{_num(base)}" stroke="#000" stroke-width="1"/>')
    for i, page in enumerate(be.pages):
        out.append(f'<g id="page{i}" fill="none" stroke="{page_color(i)}" stroke-width="1.2">')
        for u, v in page:
            x1 = MARGIN + STEP * pos[u]
            x2 = MARGIN + STEP * pos[v]
            r = (x2 - x1) / 2
            out.append(f'<path d="M {_num(x1)} {_num(base)} A {_num(r)} {_num(r)} 0 0 1 '
                       f'{_num(x2)} {_num(base)}"/>')
        out.append("</g>")
    for i, v in enumerate(be.order):
        x = MARGIN + STEP * i
        out.append(f'<circle cx="{_num(x)}" cy="{_num(base)}" r="2.5" fill="#000"/>')
        if labels:
            out.append(f'<text x="{_num(x)}" y="{_num(base + 14)}" font-size="9" '
                       f'text-anchor="middle">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
