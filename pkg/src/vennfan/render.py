"""Deterministic SVG output: filled regions, boundary strokes, rotated labels.

Byte-identical output for identical inputs: coordinates are written with a
fixed format and nothing time- or environment-dependent enters the
document.  Region fills derive their hue from the mask's Gray-code rank
and their lightness from its popcount, so angular neighbors contrast.
"""

from __future__ import annotations

import colorsys
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

import numpy as np
from scipy import ndimage

from .labels import LabelPlan, gray_order
from .regions import GRID_EXTENT, RegionComponent, mask_to_string

#: Boundary stroke palette, cycled per curve index.
STROKE_COLORS = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
)

#: Crude text-width model: glyph advance as a fraction of the font size.
CHAR_WIDTH = 0.6


@dataclass(frozen=True)
class RenderConfig:
    canvas_px: int = 1024
    stroke_width_px: float = 2.0
    label_font_family: str = "Helvetica, Arial, sans-serif"
    min_font_px: float = 4.0
    max_font_px: float = 48.0
    background: str = "#ffffff"
    extent: float = GRID_EXTENT
    palette: Optional[Sequence[str]] = None  # overrides mask-derived fills

    def __post_init__(self) -> None:
        if self.canvas_px < 256:
            raise ValueError(f"canvas_px must be >= 256, got {self.canvas_px}")
        if not self.stroke_width_px > 0:
            raise ValueError(f"stroke_width_px must be > 0, got {self.stroke_width_px}")


@dataclass(frozen=True)
class RenderResult:
    svg: str
    warnings: tuple

    def __bytes__(self) -> bytes:
        return self.svg.encode("utf-8")


def _hsl_hex(h: float, s: float, light: float) -> str:
    r, g, b = colorsys.hls_to_rgb(h % 1.0, light, s)
    return "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))


def region_fill_color(mask: int, n: int) -> str:
    """Hue from the mask's Gray rank, lightness from its popcount."""
    order = gray_order(n).sequence
    rank = order.index(mask)
    hue = rank / len(order)
    light = 0.92 - 0.45 * bin(mask).count("1") / n
    return _hsl_hex(hue, 0.65, light)


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


class _Doc:
    def __init__(self) -> None:
        self.lines: list[str] = []

    def add(self, line: str) -> None:
        self.lines.append(line)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _path_data(polys: Sequence[np.ndarray], to_px) -> str:
    parts = []
    for poly in polys:
        px = to_px(poly)
        parts.append(
            "M " + " L ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in px) + " Z"
        )
    return " ".join(parts)


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def _chord_clearance_px(comp: RegionComponent, anchor, rotation_deg: float,
                        chord_world: float, scale: float) -> float:
    """Smallest distance (px) from the label chord to the region boundary.

    Caps the font height so the rotated text box stays inside the region.
    """
    dist = ndimage.distance_transform_edt(comp.cells) * comp.cell_size
    phi = np.radians(rotation_deg)
    ts = np.linspace(-0.5, 0.5, 16) * chord_world
    xs = anchor[0] + ts * np.cos(phi)
    ys = anchor[1] + ts * np.sin(phi)
    best = np.inf
    for x, y in zip(xs, ys):
        row, col = comp.world_to_cell((x, y))
        if 0 <= row < comp.cells.shape[0] and 0 <= col < comp.cells.shape[1] and comp.cells[row, col]:
            best = min(best, float(dist[row, col]))
    if not np.isfinite(best):
        return 0.0
    return best * scale


def render_diagram(
    boundaries: Sequence,
    components: Sequence[RegionComponent],
    plan: Optional[LabelPlan],
    config: RenderConfig = RenderConfig(),
    texts: Optional[Dict[int, str]] = None,
    set_names: Optional[Sequence[str]] = None,
) -> RenderResult:
    """Assemble the SVG document.

    One filled path per region component (holes via the even-odd fill
    rule), boundary polylines stroked on top, then labels at the plan's
    anchors.  Label text defaults to the joined initials of the member
    sets; font size fits the entry's max_chord with a 10% margin, clamped
    to the config's [min, max] px, with a height cap keeping rotated text
    inside roomy regions.  Labels that cannot fit at the minimum size are
    rendered at minimum size and reported in the warnings.
    """
    from .curves import SampledBoundary  # local import to avoid cycle at import time

    size = config.canvas_px
    scale = size / (2.0 * config.extent)

    def to_px(pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        out = np.empty_like(pts)
        out[:, 0] = (pts[:, 0] + config.extent) * scale
        out[:, 1] = (config.extent - pts[:, 1]) * scale  # flip y for SVG
        return out

    n = len(boundaries)
    if set_names is None:
        set_names = [chr(ord("A") + i) for i in range(n)]
    if texts is None and plan is not None:
        texts = {
            m: "".join(set_names[i][:1] for i in range(n) if m >> i & 1) or "∅"
            for m in plan.entries
        }

    doc = _Doc()
    doc.add('<?xml version="1.0" encoding="UTF-8"?>')
    doc.add(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
    )
    doc.add(f'<rect width="{size}" height="{size}" fill="{config.background}"/>')

    # region fills, largest first so nesting cannot hide smaller regions
    comp_by_mask: Dict[int, RegionComponent] = {}
    doc.add('<g stroke="none">')
    for comp in sorted(components, key=lambda c: (-c.cell_count, c.mask)):
        held = comp_by_mask.get(comp.mask)
        if held is None or comp.cell_count > held.cell_count:
            comp_by_mask[comp.mask] = comp
        if config.palette:
            fill = config.palette[comp.mask % len(config.palette)]
        else:
            fill = region_fill_color(comp.mask, n)
        d = _path_data([comp.outline, *comp.holes], to_px)
        doc.add(f'<path d="{d}" fill="{fill}" fill-rule="evenodd"/>')
    doc.add("</g>")

    # boundary strokes
    doc.add(f'<g fill="none" stroke-width="{_fmt(config.stroke_width_px)}">')
    for i, b in enumerate(boundaries):
        poly = b.projected if isinstance(b, SampledBoundary) else np.asarray(b, float)
        px = to_px(poly)
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in px)
        color = STROKE_COLORS[i % len(STROKE_COLORS)]
        doc.add(f'<polyline points="{pts}" stroke="{color}"/>')
    doc.add("</g>")

    # labels
    warnings: list[str] = []
    if plan is not None:
        doc.add(
            f'<g font-family="{config.label_font_family}" fill="#000000" '
            'text-anchor="middle" dominant-baseline="middle">'
        )
        for mask, entry in sorted(plan.entries.items()):
            text = texts.get(mask, "") if texts else ""
            if not text:
                continue
            chord_px = entry.max_chord * scale
            fit = 0.9 * chord_px / (CHAR_WIDTH * len(text))
            if entry.strategy == "segment" and mask in comp_by_mask:
                height_cap = 1.8 * _chord_clearance_px(
                    comp_by_mask[mask], entry.anchor, entry.rotation,
                    entry.max_chord, scale,
                )
                if height_cap > 0:
                    fit = min(fit, height_cap)
            font = min(config.max_font_px, fit)
            if font < config.min_font_px:
                warnings.append(
                    f"label {mask_to_string(mask, n)} ({text!r}) needs "
                    f"{font:.2f}px but the minimum is {config.min_font_px}px"
                )
                font = config.min_font_px
            ax, ay = to_px(np.array([entry.anchor]))[0]
            rot = -entry.rotation  # world angles are CCW, SVG y points down
            doc.add(
                f'<text x="{_fmt(ax)}" y="{_fmt(ay)}" font-size="{_fmt(font)}" '
                f'transform="rotate({_fmt(rot)} {_fmt(ax)} {_fmt(ay)})">{_escape(text)}</text>'
            )
        doc.add("</g>")

    # legend
    if set_names and any(set_names):
        doc.add('<g font-family="' + config.label_font_family + '" font-size="14" text-anchor="start">')
        for i, name in enumerate(set_names):
            y = 20 + 18 * i
            color = STROKE_COLORS[i % len(STROKE_COLORS)]
            doc.add(f'<rect x="8" y="{y - 10}" width="12" height="12" fill="{color}"/>')
            doc.add(f'<text x="26" y="{y}" fill="#000000">{_escape(name)}</text>')
        doc.add("</g>")

    doc.add("</svg>")
    return RenderResult(svg=doc.text(), warnings=tuple(warnings))
