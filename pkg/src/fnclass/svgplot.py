"""Minimal SVG emitters for ROC and AUC-distribution plots.

Polyline-based: no plotting dependency, byte-identical output for
identical inputs. Every plot has a CSV companion written by the CLI, so
these are for quick visual inspection only.
"""

from __future__ import annotations

import numpy as np

WIDTH = 480
HEIGHT = 480
MARGIN = 48

_GOLDEN = 0.6180339887498949


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _header(title: str) -> list:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH // 2}" y="{MARGIN // 2 + 4}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{title}</text>'
        )
    return parts


def _polyline(xs, ys, stroke: str, width: float, opacity: float = 1.0) -> str:
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in zip(xs, ys))
    return (
        f'<polyline points="{pts}" fill="none" stroke="{stroke}" '
        f'stroke-width="{width}" stroke-opacity="{_fmt(opacity)}"/>'
    )


def _to_plot(x01, y01):
    span = WIDTH - 2 * MARGIN
    xs = MARGIN + np.asarray(x01) * span
    ys = HEIGHT - MARGIN - np.asarray(y01) * span
    return xs, ys


def roc_plot(path, p_grid, curves, mean_values=None, title: str = "") -> None:
    """ROC rays (thin gray) with an optional vertical-mean overlay."""
    parts = _header(title)
    ax_x, ax_y = _to_plot(np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]))
    parts.append(_polyline(ax_x, ax_y, "black", 1.0))
    dx, dy = _to_plot(np.array([0.0, 1.0]), np.array([0.0, 1.0]))
    parts.append(
        f'<line x1="{_fmt(dx[0])}" y1="{_fmt(dy[0])}" x2="{_fmt(dx[1])}" '
        f'y2="{_fmt(dy[1])}" stroke="gray" stroke-width="0.8" stroke-dasharray="4,4"/>'
    )
    for values in curves:
        xs, ys = _to_plot(p_grid, values)
        parts.append(_polyline(xs, ys, "#888888", 0.8, opacity=0.35))
    if mean_values is not None:
        xs, ys = _to_plot(p_grid, mean_values)
        parts.append(_polyline(xs, ys, "#1f4e9c", 2.2))
    for q, label in ((0.0, "0"), (0.5, "0.5"), (1.0, "1")):
        tx, ty = _to_plot(np.array([q]), np.array([0.0]))
        parts.append(
            f'<text x="{_fmt(tx[0])}" y="{HEIGHT - MARGIN + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{label}</text>'
        )
        tx, ty = _to_plot(np.array([0.0]), np.array([q]))
        parts.append(
            f'<text x="{MARGIN - 8}" y="{_fmt(ty[0] + 3)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{label}</text>'
        )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")


def strip_plot(path, groups, title: str = "") -> None:
    """Jittered strip plot with quartile bars, one column per group.

    `groups` is a sequence of (name, values). Jitter is the golden-ratio
    low-discrepancy sequence, so output is deterministic.
    """
    groups = list(groups)
    parts = _header(title)
    span = WIDTH - 2 * MARGIN
    n_groups = max(len(groups), 1)
    slot = span / n_groups
    ax_x, ax_y = _to_plot(np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]))
    parts.append(_polyline(ax_x, ax_y, "black", 1.0))
    for gi, (name, values) in enumerate(groups):
        values = np.asarray(values, dtype=np.float64)
        cx = MARGIN + slot * (gi + 0.5)
        for i, v in enumerate(values):
            jitter = ((i + 1) * _GOLDEN % 1.0 - 0.5) * slot * 0.55
            y = HEIGHT - MARGIN - float(np.clip(v, 0.0, 1.0)) * span
            parts.append(
                f'<circle cx="{_fmt(cx + jitter)}" cy="{_fmt(y)}" r="1.6" '
                f'fill="#555555" fill-opacity="0.45"/>'
            )
        if values.size:
            for q, w in ((0.25, 0.18), (0.5, 0.3), (0.75, 0.18)):
                qy = HEIGHT - MARGIN - float(np.clip(np.quantile(values, q), 0.0, 1.0)) * span
                parts.append(
                    f'<line x1="{_fmt(cx - slot * w)}" y1="{_fmt(qy)}" '
                    f'x2="{_fmt(cx + slot * w)}" y2="{_fmt(qy)}" '
                    f'stroke="#b03030" stroke-width="1.6"/>'
                )
        parts.append(
            f'<text x="{_fmt(cx)}" y="{HEIGHT - MARGIN + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{name}</text>'
        )
    for q, label in ((0.0, "0"), (0.5, "0.5"), (1.0, "1")):
        ty = HEIGHT - MARGIN - q * span
        parts.append(
            f'<text x="{MARGIN - 8}" y="{_fmt(ty + 3)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{label}</text>'
        )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
