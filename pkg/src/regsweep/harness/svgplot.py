"""Minimal deterministic SVG emission for run artifacts.

Static line/scatter plots only, written by hand so identical input produces
identical bytes (no timestamps, no library-version drift).  Series are read
from the documented CSV columns.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

__all__ = ["polyline_svg", "emit_plot"]

_PALETTE = ("#1b6ca8", "#c2402a", "#3a873a", "#7b4fa6", "#a07e1e", "#46808c")

_W, _H = 720, 440
_ML, _MR, _MT, _MB = 64, 16, 34, 44


def _coords(xs, ys, xlim, ylim):
    x0, x1 = xlim
    y0, y1 = ylim
    sx = (_W - _ML - _MR) / (x1 - x0 if x1 > x0 else 1.0)
    sy = (_H - _MT - _MB) / (y1 - y0 if y1 > y0 else 1.0)
    pts = []
    for x, y in zip(xs, ys):
        px = _ML + (x - x0) * sx
        py = _H - _MB - (y - y0) * sy
        pts.append(f"{px:.3f},{py:.3f}")
    return pts


def _ticks(lo, hi, count=5):
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def polyline_svg(series, *, title: str = "", xlabel: str = "", ylabel: str = "", kind: str = "line") -> str:
    """Render ``series = [(label, xs, ys), ...]`` into one SVG document."""
    out = io.StringIO()
    out.write(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">\n'
    )
    out.write(f'<rect width="{_W}" height="{_H}" fill="white"/>\n')
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys]
    if xs_all:
        xlim = (min(xs_all), max(xs_all))
        ylim = (min(ys_all), max(ys_all))
        if xlim[0] == xlim[1]:
            xlim = (xlim[0] - 1.0, xlim[1] + 1.0)
        if ylim[0] == ylim[1]:
            ylim = (ylim[0] - 1.0, ylim[1] + 1.0)
    else:
        xlim, ylim = (0.0, 1.0), (0.0, 1.0)
    # frame and ticks
    out.write(
        f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" height="{_H - _MT - _MB}" '
        'fill="none" stroke="#444444" stroke-width="1"/>\n'
    )
    for tx in _ticks(*xlim):
        px = _ML + (tx - xlim[0]) / (xlim[1] - xlim[0]) * (_W - _ML - _MR)
        out.write(
            f'<line x1="{px:.3f}" y1="{_H - _MB}" x2="{px:.3f}" y2="{_H - _MB + 5}" stroke="#444444"/>\n'
        )
        out.write(
            f'<text x="{px:.3f}" y="{_H - _MB + 18}" font-size="11" text-anchor="middle" '
            f'font-family="monospace">{tx:.3g}</text>\n'
        )
    for ty in _ticks(*ylim):
        py = _H - _MB - (ty - ylim[0]) / (ylim[1] - ylim[0]) * (_H - _MT - _MB)
        out.write(
            f'<line x1="{_ML - 5}" y1="{py:.3f}" x2="{_ML}" y2="{py:.3f}" stroke="#444444"/>\n'
        )
        out.write(
            f'<text x="{_ML - 8}" y="{py + 4:.3f}" font-size="11" text-anchor="end" '
            f'font-family="monospace">{ty:.3g}</text>\n'
        )
    if title:
        out.write(
            f'<text x="{_W / 2}" y="20" font-size="14" text-anchor="middle" '
            f'font-family="monospace">{title}</text>\n'
        )
    if xlabel:
        out.write(
            f'<text x="{_W / 2}" y="{_H - 8}" font-size="12" text-anchor="middle" '
            f'font-family="monospace">{xlabel}</text>\n'
        )
    if ylabel:
        out.write(
            f'<text x="14" y="{_H / 2}" font-size="12" text-anchor="middle" '
            f'font-family="monospace" transform="rotate(-90 14 {_H / 2})">{ylabel}</text>\n'
        )
    for i, (label, xs, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        pts = _coords(xs, ys, xlim, ylim)
        if kind == "scatter":
            for p in pts:
                px, py = p.split(",")
                out.write(f'<circle cx="{px}" cy="{py}" r="2.2" fill="{color}"/>\n')
        else:
            if pts:
                out.write(
                    f'<polyline points="{" ".join(pts)}" fill="none" stroke="{color}" '
                    'stroke-width="1.2"/>\n'
                )
        out.write(
            f'<text x="{_W - _MR - 8}" y="{_MT + 16 + 14 * i}" font-size="11" text-anchor="end" '
            f'font-family="monospace" fill="{color}">{label}</text>\n'
        )
    out.write("</svg>\n")
    return out.getvalue()


def emit_plot(csv_path, style: dict, out_path) -> Path:
    """Plot columns of a CSV artifact into a deterministic SVG file.

    ``style`` keys: ``x`` (column name), ``y`` (list of column names),
    optional ``kind`` ("line" or "scatter"), ``title``.  Missing columns
    raise ``ValueError``; an empty CSV yields an empty-axes SVG.
    """
    csv_path = Path(csv_path)
    with open(csv_path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    xcol = style["x"]
    ycols = list(style["y"])
    if rows:
        have = rows[0].keys()
        for col in [xcol, *ycols]:
            if col not in have:
                raise ValueError(f"column '{col}' not in {csv_path.name} (has {sorted(have)})")
    series = []
    for col in ycols:
        xs, ys = [], []
        for row in rows:
            if row[xcol] == "" or row[col] == "":
                continue
            xs.append(float(row[xcol]))
            ys.append(float(row[col]))
        series.append((col, xs, ys))
    svg = polyline_svg(
        series,
        title=style.get("title", csv_path.stem),
        xlabel=xcol,
        kind=style.get("kind", "line"),
    )
    out_path = Path(out_path)
    out_path.write_text(svg)
    return out_path
