"""Tiny deterministic SVG line charts.

Standalone vector panels with no external assets and no randomness or
timestamps, so repeated runs over the same data produce byte-identical
files. Supports log axes; points that cannot be drawn on a log axis
(non-positive or non-finite) split the polyline instead of distorting
it.
"""

from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

__all__ = ["line_chart"]

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")

MARGIN_LEFT = 78.0
MARGIN_RIGHT = 18.0
MARGIN_TOP = 42.0
MARGIN_BOTTOM = 58.0


def _fmt(x: float) -> str:
    return f"{x:.2f}"


class _Axis:
    def __init__(self, lo: float, hi: float, log: bool):
        self.log = log
        if log:
            lo, hi = math.log10(lo), math.log10(hi)
        if hi <= lo:
            pad = 0.5 if lo == 0.0 else abs(lo) * 0.05 + 1e-12
            lo, hi = lo - pad, hi + pad
        span = hi - lo
        self.lo = lo - 0.04 * span
        self.hi = hi + 0.04 * span

    def unit(self, value: float) -> float:
        v = math.log10(value) if self.log else value
        return (v - self.lo) / (self.hi - self.lo)

    def ticks(self) -> list[tuple[float, str]]:
        if self.log:
            decades = range(int(math.ceil(self.lo)), int(math.floor(self.hi)) + 1)
            out = [(10.0 ** k, f"1e{k}") for k in decades]
            if len(out) >= 2:
                return out
        raw = np.linspace(self.lo, self.hi, 5)
        if self.log:
            return [(10.0 ** v, f"{10.0 ** v:.2e}") for v in raw]
        return [(v, f"{v:.3g}") for v in raw]


def _valid_mask(values: np.ndarray, log: bool) -> np.ndarray:
    mask = np.isfinite(values)
    if log:
        mask &= values > 0.0
    return mask


def line_chart(
    path,
    series,
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    xlog: bool = False,
    ylog: bool = False,
    width: float = 760.0,
    height: float = 500.0,
    vlines=(),
) -> None:
    """Write a polyline chart of (label, x, y) series to ``path``.

    vlines is a sequence of (label, x_value) dashed markers.
    """
    prepared = []
    for label, xs, ys in series:
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.shape != ys.shape or xs.ndim != 1:
            raise ValueError(f"series {label!r} needs matching 1-d x and y")
        prepared.append((str(label), xs, ys))

    x_vals, y_vals = [], []
    for _, xs, ys in prepared:
        mask = _valid_mask(xs, xlog) & _valid_mask(ys, ylog)
        x_vals.append(xs[mask])
        y_vals.append(ys[mask])
    x_all = np.concatenate(x_vals) if x_vals else np.empty(0)
    y_all = np.concatenate(y_vals) if y_vals else np.empty(0)
    if x_all.size == 0:
        raise ValueError("no drawable points in any series")
    x_axis = _Axis(float(x_all.min()), float(x_all.max()), xlog)
    y_axis = _Axis(float(y_all.min()), float(y_all.max()), ylog)

    box_x0, box_x1 = MARGIN_LEFT, width - MARGIN_RIGHT
    box_y0, box_y1 = MARGIN_TOP, height - MARGIN_BOTTOM

    def px(value: float) -> float:
        return box_x0 + x_axis.unit(value) * (box_x1 - box_x0)

    def py(value: float) -> float:
        return box_y1 - y_axis.unit(value) * (box_y1 - box_y0)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" fill="white"/>',
        f'<rect x="{_fmt(box_x0)}" y="{_fmt(box_y0)}" width="{_fmt(box_x1 - box_x0)}" '
        f'height="{_fmt(box_y1 - box_y0)}" fill="none" stroke="#333" stroke-width="1"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_fmt(width / 2)}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{escape(title)}</text>'
        )

    for value, label in x_axis.ticks():
        x = px(value)
        if not box_x0 - 0.5 <= x <= box_x1 + 0.5:
            continue
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(box_y1)}" x2="{_fmt(x)}" '
            f'y2="{_fmt(box_y1 + 5)}" stroke="#333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(box_y1 + 20)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{escape(label)}</text>'
        )
    for value, label in y_axis.ticks():
        y = py(value)
        if not box_y0 - 0.5 <= y <= box_y1 + 0.5:
            continue
        parts.append(
            f'<line x1="{_fmt(box_x0 - 5)}" y1="{_fmt(y)}" x2="{_fmt(box_x0)}" '
            f'y2="{_fmt(y)}" stroke="#333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(box_x0 - 8)}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{escape(label)}</text>'
        )
    if xlabel:
        parts.append(
            f'<text x="{_fmt((box_x0 + box_x1) / 2)}" y="{_fmt(height - 14)}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="13">'
            f"{escape(xlabel)}</text>"
        )
    if ylabel:
        cy = (box_y0 + box_y1) / 2
        parts.append(
            f'<text x="20" y="{_fmt(cy)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13" '
            f'transform="rotate(-90 20 {_fmt(cy)})">{escape(ylabel)}</text>'
        )

    for label, xv in vlines:
        xv = float(xv)
        if not np.isfinite(xv) or (xlog and xv <= 0.0):
            continue
        x = px(xv)
        if not box_x0 <= x <= box_x1:
            continue
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(box_y0)}" x2="{_fmt(x)}" '
            f'y2="{_fmt(box_y1)}" stroke="#999" stroke-width="1" '
            'stroke-dasharray="4 3"/>'
        )
        parts.append(
            f'<text x="{_fmt(x + 3)}" y="{_fmt(box_y0 + 12)}" text-anchor="start" '
            f'font-family="sans-serif" font-size="10" fill="#666">{escape(str(label))}</text>'
        )

    legend_entries = []
    for idx, (label, xs, ys) in enumerate(prepared):
        color = PALETTE[idx % len(PALETTE)]
        mask = _valid_mask(xs, xlog) & _valid_mask(ys, ylog)
        legend_entries.append((label, color))
        # split the trace wherever points are not drawable
        start = None
        for k in range(xs.size + 1):
            inside = k < xs.size and mask[k]
            if inside and start is None:
                start = k
            elif not inside and start is not None:
                run = slice(start, k)
                pts = " ".join(
                    f"{_fmt(px(x))},{_fmt(py(y))}"
                    for x, y in zip(xs[run], ys[run])
                )
                if k - start >= 2:
                    parts.append(
                        f'<polyline points="{pts}" fill="none" stroke="{color}" '
                        'stroke-width="1.6"/>'
                    )
                else:
                    parts.append(
                        f'<circle cx="{_fmt(px(xs[start]))}" cy="{_fmt(py(ys[start]))}" '
                        f'r="2.2" fill="{color}"/>'
                    )
                start = None

    for idx, (label, color) in enumerate(legend_entries):
        ly = box_y0 + 14 + 16 * idx
        lx = box_x1 - 188
        parts.append(
            f'<line x1="{_fmt(lx)}" y1="{_fmt(ly - 4)}" x2="{_fmt(lx + 22)}" '
            f'y2="{_fmt(ly - 4)}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{_fmt(lx + 28)}" y="{_fmt(ly)}" font-family="sans-serif" '
            f'font-size="11">{escape(label)}</text>'
        )

    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8", newline="\n")
