"""Deterministic SVG rendering of 2-D lattice partitions.

Draws the unit squares of a partition inside a rational window, optionally
filled by the (d+1)-coloring, with an optional shaded sup-norm ball overlay
(such balls are axis-aligned squares).  Output bytes are a pure function of
the inputs: fixed ordering, fixed formatting, no timestamps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import QVector
from .lattice import LatticePartition
from .reclusive import member_color

# palette indexed by color id mod len; distinguishable fills for small d
_PALETTE = (
    "#7fc97f", "#beaed4", "#fdc086", "#ffff99",
    "#386cb0", "#f0027f", "#bf5b17", "#666666",
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a",
)

_PIXELS_PER_UNIT = 80


@dataclass(frozen=True)
class RenderOptions:
    """Window is (xmin, xmax, ymin, ymax) in exact coordinates; d = 2 only."""

    window: tuple[Fraction, Fraction, Fraction, Fraction]
    show_eps_ball: Optional[tuple[QVector, Fraction]] = None
    color_by: str = "none"  # "clique-color" | "none"

    def __post_init__(self):
        xmin, xmax, ymin, ymax = self.window
        if xmin >= xmax or ymin >= ymax:
            raise ValueError(f"degenerate window {self.window}")
        if self.color_by not in ("clique-color", "none"):
            raise ValueError(f"unknown color mode {self.color_by!r}")


def _px(value: Fraction) -> str:
    return f"{float(value) * _PIXELS_PER_UNIT:.2f}"


def render_svg(partition: LatticePartition, opts: RenderOptions) -> bytes:
    """SVG 1.1 document showing the partition within the window."""
    if partition.d != 2:
        raise ValueError(f"rendering supports d = 2 only, got d = {partition.d}")
    xmin, xmax, ymin, ymax = (Fraction(v) for v in opts.window)
    width = _px(xmax - xmin)
    height = _px(ymax - ymin)

    def point(x: Fraction, y: Fraction) -> tuple[str, str]:
        # SVG y axis points down
        return _px(x - xmin), _px(ymax - y)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    members = sorted(
        partition.members_in_box(QVector([xmin, ymin]), QVector([xmax, ymax]))
    )
    for m in members:
        rep = partition.rep_of(m)
        x, y = point(rep[0], rep[1] + 1)
        side = _px(Fraction(1))
        if opts.color_by == "clique-color":
            fill = _PALETTE[member_color(2, m) % len(_PALETTE)]
        else:
            fill = "#ffffff"
        lines.append(
            f'<rect x="{x}" y="{y}" width="{side}" height="{side}" '
            f'fill="{fill}" fill-opacity="0.65" stroke="#000000" stroke-width="1"/>'
        )
    if opts.show_eps_ball is not None:
        center, radius = opts.show_eps_ball
        radius = Fraction(radius)
        if radius <= 0:
            raise ValueError(f"ball radius must be positive, got {radius}")
        x, y = point(center[0] - radius, center[1] + radius)
        side = _px(2 * radius)
        lines.append(
            f'<rect x="{x}" y="{y}" width="{side}" height="{side}" '
            f'fill="#d62728" fill-opacity="0.45" stroke="#d62728" stroke-width="1"/>'
        )
        cx, cy = point(center[0], center[1])
        lines.append(f'<circle cx="{cx}" cy="{cy}" r="2" fill="#d62728"/>')
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
