"""Deterministic SVG rendering of diagrams and landscapes.

Fixed 1000 x 600 viewport, fixed per-dimension palette, fixed decimal
formatting; identical inputs produce byte-identical files.
"""

from __future__ import annotations

from .landscape import PersistenceLandscape
from .persistence import PersistenceDiagram

WIDTH = 1000
HEIGHT = 600
MARGIN = 60

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


def _color(k: int) -> str:
    return PALETTE[k % len(PALETTE)]


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _x(v: float, vmax: float) -> float:
    span = WIDTH - 2 * MARGIN
    return MARGIN + (v / vmax) * span if vmax > 0 else MARGIN


def _y(v: float, vmax: float) -> float:
    span = HEIGHT - 2 * MARGIN
    return HEIGHT - MARGIN - (v / vmax) * span if vmax > 0 else HEIGHT - MARGIN


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{MARGIN}" y="30" font-family="monospace" font-size="16">{title}</text>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" y2="{HEIGHT - MARGIN}" '
        'stroke="black" stroke-width="1"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" '
        'stroke="black" stroke-width="1"/>',
    ]


def render_diagram_svg(diagrams: list[PersistenceDiagram], cap: float) -> str:
    """Persistence diagram scatter; essential classes sit on the dotted cap line."""
    parts = _header("persistence diagram")
    vmax = cap if cap > 0 else 1.0
    ycap = _y(cap, vmax)
    parts.append(
        f'<line x1="{MARGIN}" y1="{_fmt(ycap)}" x2="{WIDTH - MARGIN}" y2="{_fmt(ycap)}" '
        'stroke="gray" stroke-width="1" stroke-dasharray="6,4"/>'
    )
    parts.append(
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" y2="{MARGIN}" '
        'stroke="lightgray" stroke-width="1"/>'
    )
    for dg in diagrams:
        color = _color(dg.k)
        for birth, death in dg.pairs:
            dv = min(death, cap)
            parts.append(
                f'<circle cx="{_fmt(_x(birth, vmax))}" cy="{_fmt(_y(dv, vmax))}" r="4" '
                f'fill="{color}" fill-opacity="0.7"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_landscape_svg(landscapes: list[PersistenceLandscape]) -> str:
    """Landscape layers as polylines, colored per homology dimension."""
    parts = _header("persistence landscape")
    cap = max((pl.cap for pl in landscapes), default=1.0)
    ymax = 0.0
    for pl in landscapes:
        if pl.n_layers:
            ymax = max(ymax, float(pl.layers.max()))
    if ymax <= 0:
        ymax = 1.0
    xcap = _x(cap, cap if cap > 0 else 1.0)
    parts.append(
        f'<line x1="{_fmt(xcap)}" y1="{MARGIN}" x2="{_fmt(xcap)}" y2="{HEIGHT - MARGIN}" '
        'stroke="gray" stroke-width="1" stroke-dasharray="6,4"/>'
    )
    for pl in landscapes:
        color = _color(pl.k_homology)
        for m in range(pl.n_layers):
            points = " ".join(
                f"{_fmt(_x(float(x), cap))},{_fmt(_y(float(v), ymax))}"
                for x, v in zip(pl.grid, pl.layers[m])
            )
            parts.append(
                f'<polyline points="{points}" fill="none" stroke="{color}" '
                'stroke-width="1.5" stroke-opacity="0.8"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
