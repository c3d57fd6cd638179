"""Static SVG rendering of moment regions and capacity staircases.

The only floats in the package live here.  Every coordinate goes through
:func:`_num` (15 significant digits), so output is byte-identical for equal
inputs.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .domains import ConvexToricDomain

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
PANEL, MARGIN = 320, 48


def _num(value) -> str:
    text = format(float(value), ".15g")
    return "0" if text == "-0" else text


def _polyline(points, color: str, extra: str = "") -> str:
    pts = " ".join(f"{_num(x)},{_num(y)}" for x, y in points)
    return f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"{extra}/>'


def _axes(x0: float, y0: float, xlabel: str, ylabel: str, xmax, ymax) -> list[str]:
    return [
        f'<line x1="{_num(x0)}" y1="{_num(y0)}" x2="{_num(x0 + PANEL)}" y2="{_num(y0)}" stroke="black"/>',
        f'<line x1="{_num(x0)}" y1="{_num(y0)}" x2="{_num(x0)}" y2="{_num(y0 - PANEL)}" stroke="black"/>',
        f'<text x="{_num(x0 + PANEL)}" y="{_num(y0 + 20)}" text-anchor="end">{escape(xlabel)}</text>',
        f'<text x="{_num(x0 - 8)}" y="{_num(y0 - PANEL - 8)}">{escape(ylabel)}</text>',
        f'<text x="{_num(x0 + PANEL)}" y="{_num(y0 + 36)}" text-anchor="end" font-size="10">max {xmax}</text>',
        f'<text x="{_num(x0 - 8)}" y="{_num(y0 - PANEL - 22)}" font-size="10">max {ymax}</text>',
    ]


def render_plot(domains: Sequence[ConvexToricDomain],
                capacity_values: Sequence[Sequence[Fraction]] = ()) -> str:
    """Profiles on the moment plane, and optionally each c_k staircase beside them."""
    panels = 2 if capacity_values else 1
    width = panels * (PANEL + 2 * MARGIN)
    height = PANEL + 2 * MARGIN + 24 * len(domains)
    body: list[str] = []

    extent = max(max(d.a, d.f0) for d in domains)
    s = Fraction(PANEL) / extent
    ox, oy = MARGIN, MARGIN + PANEL
    body += _axes(ox, oy, "x = pi|z1|^2", "y = pi|z2|^2", extent, extent)
    for i, dom in enumerate(domains):
        color = PALETTE[i % len(PALETTE)]
        outline = [(0, 0), (0, dom.f0), *dom.breakpoints, (dom.a, 0)]
        body.append(_polyline([(ox + x * s, oy - y * s) for x, y in outline], color))
        body.append(f'<text x="{_num(MARGIN)}" y="{_num(oy + MARGIN + 24 * i)}" fill="{color}">'
                    f'{escape(str(dom))}</text>')

    if capacity_values:
        top = max(len(vals) for vals in capacity_values) - 1
        cmax = max(max(vals) for vals in capacity_values) or Fraction(1)
        sx = Fraction(PANEL) / max(top, 1)
        sy = Fraction(PANEL) / cmax
        ox2 = ox + PANEL + 2 * MARGIN
        body += _axes(ox2, oy, "k", "c_k", top, cmax)
        for i, vals in enumerate(capacity_values):
            color = PALETTE[i % len(PALETTE)]
            pts = []
            for k, v in enumerate(vals):
                if pts:
                    pts.append((k, vals[k - 1]))
                pts.append((k, v))
            body.append(_polyline([(ox2 + k * sx, oy - v * sy) for k, v in pts], color,
                                  ' stroke-linejoin="miter"'))
            for k, v in enumerate(vals):
                body.append(f'<circle cx="{_num(ox2 + k * sx)}" cy="{_num(oy - v * sy)}" r="2.5" '
                            f'fill="{color}"/>')

    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">')
    return "\n".join(['<?xml version="1.0" encoding="UTF-8"?>', head,
                      f'<rect width="{width}" height="{height}" fill="white"/>', *body, "</svg>"]) + "\n"
