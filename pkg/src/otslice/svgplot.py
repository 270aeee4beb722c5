"""Minimal static SVG line plots — no renderer dependency, byte-stable output."""

from __future__ import annotations

import math

__all__ = ["line_plot"]

_WIDTH, _HEIGHT = 640, 420
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 64, 16, 36, 48
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _ticks(lo: float, hi: float, count: int = 5) -> list:
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def _fmt(x: float) -> str:
    return f"{x:.4g}"


def line_plot(
    path,
    series,
    title: str = "",
    x_label: str = "",
    y_label: str = "",
) -> None:
    """Write a line plot of ``series`` = [(name, xs, ys), ...] as SVG."""
    pts = [(float(x), float(y)) for _, xs, ys in series for x, y in zip(xs, ys)]
    if not pts:
        raise ValueError("nothing to plot: all series are empty")
    xs_all = [p[0] for p in pts]
    ys_all = [p[1] for p in pts]
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all), max(ys_all)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def sx(x: float) -> float:
        return _MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        return _HEIGHT - _MARGIN_B - (y - y_lo) / (y_hi - y_lo) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#888"/>',
    ]
    for tx in _ticks(x_lo, x_hi):
        px = sx(tx)
        out.append(
            f'<line x1="{px:.2f}" y1="{_HEIGHT - _MARGIN_B}" x2="{px:.2f}" '
            f'y2="{_HEIGHT - _MARGIN_B + 5}" stroke="#444"/>'
        )
        out.append(
            f'<text x="{px:.2f}" y="{_HEIGHT - _MARGIN_B + 18}" font-size="11" '
            f'text-anchor="middle" font-family="sans-serif">{_fmt(tx)}</text>'
        )
    for ty in _ticks(y_lo, y_hi):
        py = sy(ty)
        out.append(
            f'<line x1="{_MARGIN_L - 5}" y1="{py:.2f}" x2="{_MARGIN_L}" '
            f'y2="{py:.2f}" stroke="#444"/>'
        )
        out.append(
            f'<text x="{_MARGIN_L - 8}" y="{py + 4:.2f}" font-size="11" '
            f'text-anchor="end" font-family="sans-serif">{_fmt(ty)}</text>'
        )
    for i, (name, xs, ys) in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        coords = " ".join(f"{sx(float(x)):.2f},{sy(float(y)):.2f}" for x, y in zip(xs, ys))
        out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        if name:
            ly = _MARGIN_T + 14 + 14 * i
            out.append(
                f'<line x1="{_WIDTH - _MARGIN_R - 120}" y1="{ly - 4}" '
                f'x2="{_WIDTH - _MARGIN_R - 100}" y2="{ly - 4}" stroke="{color}" stroke-width="1.5"/>'
            )
            out.append(
                f'<text x="{_WIDTH - _MARGIN_R - 95}" y="{ly}" font-size="11" '
                f'font-family="sans-serif">{name}</text>'
            )
    if title:
        out.append(
            f'<text x="{_WIDTH / 2:.0f}" y="22" font-size="14" text-anchor="middle" '
            f'font-family="sans-serif">{title}</text>'
        )
    if x_label:
        out.append(
            f'<text x="{_MARGIN_L + plot_w / 2:.0f}" y="{_HEIGHT - 10}" font-size="12" '
            f'text-anchor="middle" font-family="sans-serif">{x_label}</text>'
        )
    if y_label:
        out.append(
            f'<text x="16" y="{_MARGIN_T + plot_h / 2:.0f}" font-size="12" '
            f'text-anchor="middle" font-family="sans-serif" '
            f'transform="rotate(-90 16 {_MARGIN_T + plot_h / 2:.0f})">{y_label}</text>'
        )
    out.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(out) + "\n")
