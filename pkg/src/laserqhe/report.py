"""CSV and SVG output for EMP sweeps.

CSV files start with ``#`` comment lines echoing the configuration, followed
by a header of :class:`~laserqhe.optimize.SweepRow` field names and one line
per row.  Floats are written with 17 significant digits so that reading a
file back reproduces the in-memory values exactly.
"""
from __future__ import annotations

import csv
import hashlib
import math
from pathlib import Path
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .optimize import SweepRow

__all__ = ["config_hash", "format_value", "write_csv", "read_csv", "write_table",
           "write_svg"]


def config_hash(text: str) -> str:
    """Short, stable digest of a canonical configuration text."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def format_value(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_table(path: Path, columns: Sequence[str], rows: Iterable[Sequence],
                comments: Sequence[str] = ()) -> None:
    """Write ``rows`` under a header, preceded by ``# `` comment lines."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        for line in comments:
            fh.write(f"# {line}\n" if line else "#\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(v) for v in row])


def write_csv(path: Path, rows: Sequence[SweepRow], comments: Sequence[str] = ()) -> None:
    names = SweepRow.field_names()
    write_table(path, names, ([getattr(r, n) for n in names] for r in rows), comments)


def read_csv(path: Path) -> tuple[list[str], list[SweepRow]]:
    """Parse a file written by :func:`write_csv`; returns (comments, rows)."""
    comments, body = [], []
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#"):
                comments.append(line[1:].strip())
            else:
                body.append(line)
    reader = csv.DictReader(body)
    if reader.fieldnames != SweepRow.field_names():
        raise ValueError(f"{path}: unexpected columns {reader.fieldnames}")
    rows = []
    for rec in reader:
        values = {k: (v if k == "flags" else float(v)) for k, v in rec.items()}
        rows.append(SweepRow(**values))
    return comments, rows


_PALETTE = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02",
            "#a6761d", "#666666", "#1f78b4", "#b2df8a")


def write_svg(path: Path, title: str, series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
              xlabel: str = "eta_C", ylabel: str = "eta*",
              width: int = 640, height: int = 440) -> None:
    """Minimal line plot: axes, one polyline per series and a legend.

    Non-finite points are dropped.  Output depends only on the inputs.
    """
    pts = [(x, y) for _, xs, ys in series for x, y in zip(xs, ys)
           if math.isfinite(x) and math.isfinite(y)]
    if pts:
        x0, x1 = min(p[0] for p in pts), max(p[0] for p in pts)
        y0, y1 = min(0.0, min(p[1] for p in pts)), max(p[1] for p in pts)
    else:
        x0, x1, y0, y1 = 0.0, 1.0, 0.0, 1.0
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    left, right, top, bottom = 60, 170, 40, 50
    pw, ph = width - left - right, height - top - bottom

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + ph - (y - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{left}" y="22" font-size="13">{escape(title)}</text>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for i in range(6):
        fx = x0 + (x1 - x0) * i / 5
        fy = y0 + (y1 - y0) * i / 5
        out.append(f'<text x="{sx(fx):.2f}" y="{top + ph + 15}" text-anchor="middle">{fx:.3g}</text>')
        out.append(f'<text x="{left - 6}" y="{sy(fy) + 4:.2f}" text-anchor="end">{fy:.3g}</text>')
    out.append(f'<text x="{left + pw / 2:.2f}" y="{height - 12}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="16" y="{top + ph / 2:.2f}" transform="rotate(-90 16 {top + ph / 2:.2f})" '
               f'text-anchor="middle">{escape(ylabel)}</text>')
    for k, (label, xs, ys) in enumerate(series):
        colour = _PALETTE[k % len(_PALETTE)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys)
                          if math.isfinite(x) and math.isfinite(y))
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{coords}"/>')
        ly = top + 12 + 16 * k
        out.append(f'<line x1="{left + pw + 10}" y1="{ly}" x2="{left + pw + 30}" y2="{ly}" '
                   f'stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{left + pw + 34}" y="{ly + 4}">{escape(label)}</text>')
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")
