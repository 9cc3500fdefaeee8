"""Label anchors and rotations for every region of a diagram.

Two placement strategies: radial labels arranged around the unit circle in
the Gray-code order the construction induces, and in-region labels placed
by a geometric heuristic (erode the region, take the visual center of the
eroded set, then the longest chord through it; the label sits at the chord
midpoint, rotated along the chord).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Sequence

import numpy as np
from scipy import ndimage

from .curves import CurveSpec
from .regions import RegionComponent, _component_contours


@dataclass(frozen=True)
class GrayOrder:
    """The 2^n masks in binary-reflected Gray order.

    Consecutive masks differ in exactly one bit; the first entry is the
    all-zeros mask, and the bit of set n-1 (the fastest-oscillating curve)
    is the most frequently flipping one.
    """

    n: int
    sequence: tuple


def gray_order(n: int) -> GrayOrder:
    """Binary-reflected Gray code over the n set bits.

    The order equals the sequence of membership flips met when sweeping
    the angle once around the diagram: each sign change of the curve
    family flips exactly one set, the fastest curve flipping every other
    step.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    seq = []
    for k in range(2 ** n):
        code = k ^ (k >> 1)
        mask = 0
        for j in range(n):
            if code >> j & 1:
                mask |= 1 << (n - 1 - j)
        seq.append(mask)
    return GrayOrder(n=n, sequence=tuple(seq))


@dataclass(frozen=True)
class RadialAnchor:
    angle: float  # radians
    radius: float


#: Radial anchors sit just outside the unit circle.
RADIAL_RADIUS = 1.06


def radial_anchors(
    order: GrayOrder, spec: Optional[CurveSpec] = None, variant: str = "sine"
) -> Dict[int, RadialAnchor]:
    """Map each mask to the angular midpoint of its slot around the circle.

    The domain splits into 2^n equal angular slots; slot k belongs to the
    k-th mask of the Gray order.  Anchors are placed at radius 1.06.  The
    slots start where the variant's angular sweep starts (-pi for sine, 0
    for cosine); pass either a spec or a bare variant name.
    """
    if spec is not None:
        if 2 ** spec.n != len(order.sequence):
            raise ValueError("Gray order built for a different set count")
        variant = spec.variant
    start = -np.pi if variant == "sine" else 0.0
    width = 2.0 * np.pi / len(order.sequence)
    return {
        mask: RadialAnchor(angle=start + (k + 0.5) * width, radius=RADIAL_RADIUS)
        for k, mask in enumerate(order.sequence)
    }


# ---------------------------------------------------------------------------
# Geometric anchors
# ---------------------------------------------------------------------------

def centroid(component: RegionComponent) -> tuple[float, float]:
    """Mean of the component's cell centers.

    May fall outside the region for non-convex shapes; that failure mode
    is why the visual center exists.
    """
    pts = component.cell_centers()
    return float(pts[:, 0].mean()), float(pts[:, 1].mean())


def visual_center(component: RegionComponent) -> tuple[tuple[float, float], float]:
    """Cell center maximizing the distance to the nearest non-region cell.

    Returns ((x, y), clearance) with the clearance in world units.  Ties
    break toward the lowest (row, col).
    """
    dist = ndimage.distance_transform_edt(component.cells)
    row, col = np.unravel_index(int(np.argmax(dist)), dist.shape)
    point = component.cell_center_world(row, col)
    return point, float(dist[row, col]) * component.cell_size


def erode_to_fraction(component: RegionComponent, fraction: float) -> RegionComponent:
    """Erode (4-neighborhood) until the area drops to <= fraction of the original.

    Stops one step before the set would become empty, so the result is
    never empty; a fragile region (e.g. a one-cell-wide ring) comes back
    unchanged.  Erosion can split a region, so the returned component's
    cells are not necessarily connected.
    """
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    target = fraction * component.cell_count
    if component.cell_count <= target:
        return component
    # k iterations of cross-structure erosion keep cells with taxicab
    # distance > k from the complement; pick k from the distance transform.
    dist = ndimage.distance_transform_cdt(
        np.pad(component.cells, 1), metric="taxicab"
    )[1:-1, 1:-1]
    sizes = np.bincount(dist.ravel())
    # cells with dist > k survive k erosion steps
    remaining = np.append(dist.size - np.cumsum(sizes), 0)
    k = 0
    while remaining[k] > target and remaining[k + 1] > 0:
        k += 1
    if k == 0:
        return component
    cells = dist > k
    outline, holes = _component_contours(
        cells, component.offset, component.origin, component.cell_size
    )
    count = int(np.count_nonzero(cells))
    return replace(
        component,
        cells=cells,
        cell_count=count,
        area=component.area * count / component.cell_count,
        outline=outline,
        holes=holes,
    )


def longest_segment(
    component: RegionComponent, anchor, directions: int = 90
) -> tuple[np.ndarray, np.ndarray, float]:
    """Longest chord through `anchor` that stays inside the cell set.

    Scans `directions` evenly spaced angles in [0, pi), growing the chord
    both ways in one-cell steps until it exits.  Returns (p1, p2, angle)
    with the angle in degrees, normalized to (-90, 90]; ties go to the
    smallest angle.
    """
    if directions < 8:
        raise ValueError(f"directions must be >= 8, got {directions}")
    if not component.contains_point(anchor):
        raise ValueError(f"anchor {tuple(anchor)} lies outside the component")

    h = component.cell_size
    rows, cols = component.cells.shape
    r0, c0 = component.offset
    ox, oy = component.origin
    ax, ay = float(anchor[0]), float(anchor[1])
    max_steps = int(np.ceil(np.hypot(rows, cols))) + 2
    steps = np.arange(1, max_steps + 1) * h

    def reach(dx: float, dy: float) -> float:
        xs = ax + steps * dx
        ys = ay + steps * dy
        cc = np.floor((xs - ox) / h).astype(int) - c0
        rr = np.floor((ys - oy) / h).astype(int) - r0
        ok = (rr >= 0) & (rr < rows) & (cc >= 0) & (cc < cols)
        inside = np.zeros(steps.size, dtype=bool)
        inside[ok] = component.cells[rr[ok], cc[ok]]
        bad = np.nonzero(~inside)[0]
        exit_idx = bad[0] if bad.size else steps.size
        return float(exit_idx) * h

    best = (-1.0, None, None, 0.0)
    for k in range(directions):
        phi = k * np.pi / directions
        dx, dy = np.cos(phi), np.sin(phi)
        forward = reach(dx, dy)
        backward = reach(-dx, -dy)
        length = forward + backward
        if length > best[0]:
            p1 = np.array([ax - backward * dx, ay - backward * dy])
            p2 = np.array([ax + forward * dx, ay + forward * dy])
            best = (length, p1, p2, phi)
    angle = np.degrees(best[3])
    if angle > 90.0:
        angle -= 180.0
    return best[1], best[2], float(angle)


# ---------------------------------------------------------------------------
# Plans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LabelConfig:
    """Knobs of the placement heuristic.

    `min_clearance` (world units) decides Segment vs Radial; the default
    corresponds to 8 px of text ascent on a 1024 px canvas spanning the
    4.2-unit frame.
    """

    min_clearance: float = 8.0 / 1024.0 * 4.2
    erosion_fraction: float = 0.5
    directions: int = 90
    radial_radius: float = RADIAL_RADIUS


@dataclass(frozen=True)
class LabelEntry:
    anchor: tuple[float, float]
    rotation: float  # degrees in (-90, 90]
    strategy: str  # "segment", "radial" or "visual-center"
    max_chord: float


@dataclass(frozen=True)
class LabelPlan:
    n: int
    entries: Dict[int, LabelEntry]

    def to_json_dict(self) -> list:
        from .regions import mask_to_string

        return [
            {
                "mask": mask_to_string(m, self.n),
                "anchor": [round(e.anchor[0], 9), round(e.anchor[1], 9)],
                "rotationDeg": round(e.rotation, 6),
                "strategy": e.strategy,
            }
            for m, e in sorted(self.entries.items())
        ]


def _fold_upright(deg: float) -> float:
    """Fold an angle into (-90, 90] so text is never upside down."""
    while deg > 90.0:
        deg -= 180.0
    while deg <= -90.0:
        deg += 180.0
    return deg


def plan_labels(
    components: Sequence[RegionComponent],
    spec: CurveSpec,
    config: LabelConfig = LabelConfig(),
) -> LabelPlan:
    """One label entry per mask that owns at least one component.

    The largest component of each mask is the one labeled; sub-threshold
    extras are ignored.  Roomy regions (visual-center clearance at or above
    `min_clearance`) get the erode / visual-center / longest-chord
    treatment; cramped ones get a radial anchor outside the circle.
    """
    primary: Dict[int, RegionComponent] = {}
    for comp in components:
        held = primary.get(comp.mask)
        if held is None or comp.cell_count > held.cell_count:
            primary[comp.mask] = comp

    anchors = radial_anchors(gray_order(spec.n), spec)
    entries: Dict[int, LabelEntry] = {}
    for mask, comp in sorted(primary.items()):
        _, clearance = visual_center(comp)
        if clearance >= config.min_clearance:
            eroded = erode_to_fraction(comp, config.erosion_fraction)
            point, _ = visual_center(eroded)
            p1, p2, angle = longest_segment(eroded, point, config.directions)
            mid = (p1 + p2) / 2.0
            entries[mask] = LabelEntry(
                anchor=(float(mid[0]), float(mid[1])),
                rotation=angle,
                strategy="segment",
                max_chord=float(np.hypot(*(p2 - p1))),
            )
        else:
            ra = anchors[mask]
            entries[mask] = LabelEntry(
                anchor=(
                    ra.radius * float(np.cos(ra.angle)),
                    ra.radius * float(np.sin(ra.angle)),
                ),
                rotation=_fold_upright(np.degrees(ra.angle)),
                strategy="radial",
                # room available along the radial direction before the circle
                max_chord=2.0 * (config.radial_radius - 1.0),
            )
    return LabelPlan(n=spec.n, entries=entries)
