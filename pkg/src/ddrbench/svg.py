"""Deterministic SVG emitter for accuracy curves and AUC bar charts.

Output is a pure function of the inputs: fixed canvas, fixed styling, no
timestamps or environment reads.  Data series are the only <polyline>
elements; axes, ticks, and legend swatches use <line>.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

WIDTH = 640
HEIGHT = 480
MARGIN_LEFT = 70
MARGIN_RIGHT = 24
MARGIN_TOP = 46
MARGIN_BOTTOM = 56

PLOT_W = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
PLOT_H = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _x(v: float) -> float:
    return MARGIN_LEFT + v * PLOT_W


def _y(v: float) -> float:
    return MARGIN_TOP + (1.0 - v) * PLOT_H


def _esc(text: str) -> str:
    return (
        str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def _header(title: str) -> List[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="24" font-size="15" text-anchor="middle">'
        f"{_esc(title)}</text>",
    ]


def _axes(xlabel: str, ylabel: str, x_ticks: bool = True) -> List[str]:
    parts = [
        f'<line x1="{_fmt(_x(0))}" y1="{_fmt(_y(0))}" x2="{_fmt(_x(1))}" '
        f'y2="{_fmt(_y(0))}" stroke="black"/>',
        f'<line x1="{_fmt(_x(0))}" y1="{_fmt(_y(0))}" x2="{_fmt(_x(0))}" '
        f'y2="{_fmt(_y(1))}" stroke="black"/>',
    ]
    for i in range(6):
        v = i / 5.0
        if x_ticks:
            parts.append(
                f'<line x1="{_fmt(_x(v))}" y1="{_fmt(_y(0))}" x2="{_fmt(_x(v))}" '
                f'y2="{_fmt(_y(0) + 5)}" stroke="black"/>'
            )
            parts.append(
                f'<text x="{_fmt(_x(v))}" y="{_fmt(_y(0) + 19)}" font-size="11" '
                f'text-anchor="middle">{v:.1f}</text>'
            )
        parts.append(
            f'<line x1="{_fmt(_x(0) - 5)}" y1="{_fmt(_y(v))}" x2="{_fmt(_x(0))}" '
            f'y2="{_fmt(_y(v))}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(_x(0) - 9)}" y="{_fmt(_y(v) + 4)}" font-size="11" '
            f'text-anchor="end">{v:.1f}</text>'
        )
    parts.append(
        f'<text x="{_fmt(_x(0.5))}" y="{HEIGHT - 12}" font-size="13" '
        f'text-anchor="middle">{_esc(xlabel)}</text>'
    )
    parts.append(
        f'<text x="18" y="{_fmt(_y(0.5))}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 18 {_fmt(_y(0.5))})">{_esc(ylabel)}</text>'
    )
    return parts


Series = Tuple[str, Sequence[float], Sequence[float]]


def line_chart(series: Sequence[Series], title: str, xlabel: str, ylabel: str) -> str:
    """Line chart over the unit square; one polyline per series."""
    parts = _header(title)
    parts.extend(_axes(xlabel, ylabel))
    for i, (label, xs, ys) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        coords = " ".join(f"{_fmt(_x(x))},{_fmt(_y(y))}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        ly = MARGIN_TOP + 14 + 16 * i
        parts.append(
            f'<line x1="{MARGIN_LEFT + 10}" y1="{ly}" x2="{MARGIN_LEFT + 34}" '
            f'y2="{ly}" stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{MARGIN_LEFT + 40}" y="{ly + 4}" font-size="11">{_esc(label)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def bar_chart(labels: Sequence[str], values: Sequence[float], title: str, ylabel: str) -> str:
    """Bar chart of values in [0, 1]; one rect per labeled bar."""
    parts = _header(title)
    parts.extend(_axes("", ylabel, x_ticks=False))
    n = max(len(labels), 1)
    slot = PLOT_W / n
    bar_w = slot * 0.6
    for i, (label, value) in enumerate(zip(labels, values)):
        left = MARGIN_LEFT + slot * i + (slot - bar_w) / 2
        top = _y(value)
        parts.append(
            f'<rect x="{_fmt(left)}" y="{_fmt(top)}" width="{_fmt(bar_w)}" '
            f'height="{_fmt(_y(0) - top)}" fill="{PALETTE[i % len(PALETTE)]}"/>'
        )
        parts.append(
            f'<text x="{_fmt(left + bar_w / 2)}" y="{_fmt(_y(0) + 19)}" font-size="11" '
            f'text-anchor="middle">{_esc(label)}</text>'
        )
        parts.append(
            f'<text x="{_fmt(left + bar_w / 2)}" y="{_fmt(top - 5)}" font-size="10" '
            f'text-anchor="middle">{value:.3f}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
