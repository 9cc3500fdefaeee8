"""Region extraction and verification for fan-blade diagrams.

The plane is classified into 2^n membership masks (bit i set = inside
curve i), connected components are extracted per mask, and the diagram is
checked against three predicates: every mask nonempty (independent
family), one region per mask (Venn), and no point shared by three or more
boundaries (simple).

Two classification backends are provided: the radial rule r < 1 + f_i(theta)
for specs built from trigonometric curves, and even-odd ray casting for
arbitrary closed polylines (used for the projected cogwheel diagrams).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree
from shapely.geometry import LineString
from skimage import measure

from .curves import TWO_PI, CurveSpec, SampledBoundary, shaped_trig

#: Half-width of the square raster window; covers the radius-2 bound plus margin.
GRID_EXTENT = 2.1

#: Default "tiny component" cutoff, in cells (normalized inside verify()).
TINY_CELLS = 4


def mask_to_string(mask: int, n: int) -> str:
    """Binary string of a mask with the bit for set 0 printed first."""
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def string_to_mask(s: str) -> int:
    return sum(1 << i for i, ch in enumerate(s) if ch == "1")


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def _strip_x_of_theta(spec: CurveSpec, theta):
    """Map polar angles back into the spec's strip domain."""
    if spec.variant == "sine":
        return theta
    return np.mod(theta, TWO_PI) + TWO_PI


def classify_point(spec: CurveSpec, point) -> int:
    """Membership mask of a planar point under the radial rule.

    Bit i is set iff radius(point) < 1 + f_i(theta(point)).  The origin is
    inside every set whenever the spec keeps |f| < 1.
    """
    x, y = float(point[0]), float(point[1])
    r = np.hypot(x, y)
    theta = np.arctan2(y, x)
    xs = _strip_x_of_theta(spec, theta)
    mask = 0
    for i in range(spec.n):
        if r < 1.0 + float(shaped_trig(spec, i, xs)):
            mask |= 1 << i
    return mask


@dataclass(frozen=True)
class RasterGrid:
    """Square raster of membership masks over [-extent, extent]^2.

    Row r, column c holds the mask of the cell center
    (-extent + (c + 1/2) h, -extent + (r + 1/2) h) with h = 2 extent / resolution.
    """

    masks: np.ndarray
    resolution: int
    n: int
    extent: float = GRID_EXTENT
    spec: Optional[CurveSpec] = None

    @property
    def cell_size(self) -> float:
        return 2.0 * self.extent / self.resolution

    def cell_centers(self) -> tuple[np.ndarray, np.ndarray]:
        h = self.cell_size
        coords = -self.extent + (np.arange(self.resolution) + 0.5) * h
        return np.meshgrid(coords, coords)

    def census(self) -> set[int]:
        """Set of masks present in the grid."""
        return set(int(m) for m in np.unique(self.masks))

    def disk_cell_count(self) -> int:
        """Number of cells whose center lies within radius 2 (area denominator)."""
        X, Y = self.cell_centers()
        return int(np.count_nonzero(X * X + Y * Y <= 4.0))


def _validate_resolution(resolution: int) -> None:
    if resolution < 256:
        raise ValueError(f"resolution must be >= 256, got {resolution}")


def rasterize(spec: CurveSpec, resolution: int) -> RasterGrid:
    """Classify every cell center of a resolution^2 grid under the radial rule."""
    _validate_resolution(resolution)
    h = 2.0 * GRID_EXTENT / resolution
    coords = -GRID_EXTENT + (np.arange(resolution) + 0.5) * h
    X, Y = np.meshgrid(coords, coords)
    R = np.hypot(X, Y)
    theta = np.arctan2(Y, X)
    xs = _strip_x_of_theta(spec, theta)

    masks = np.zeros(X.shape, dtype=np.uint16)
    for i in range(spec.n):
        inside = R < 1.0 + shaped_trig(spec, i, xs)
        masks |= inside.astype(np.uint16) << i
    return RasterGrid(masks=masks, resolution=resolution, n=spec.n, spec=spec)


def rasterize_strip(spec: CurveSpec, resolution: int) -> np.ndarray:
    """Classify the strip domain x-range x [-1, 1] by the rule y < f_i(x).

    Returns the bare mask array; used to check that the radial projection
    preserves the mask census.
    """
    _validate_resolution(resolution)
    x0, x1 = spec.domain
    xs = x0 + (np.arange(resolution) + 0.5) * (x1 - x0) / resolution
    ys = -1.0 + (np.arange(resolution) + 0.5) * 2.0 / resolution
    X, Y = np.meshgrid(xs, ys)
    masks = np.zeros(X.shape, dtype=np.uint16)
    for i in range(spec.n):
        inside = Y < shaped_trig(spec, i, X)
        masks |= inside.astype(np.uint16) << i
    return masks


# ---------------------------------------------------------------------------
# Even-odd backend
# ---------------------------------------------------------------------------

def _polyline_of(boundary) -> np.ndarray:
    if isinstance(boundary, SampledBoundary):
        return boundary.projected
    return np.asarray(boundary, dtype=float)


def classify_by_even_odd(curves: Sequence, point) -> int:
    """Membership mask by ray-casting parity against each closed polyline.

    An edge is counted when its y-span contains the point's y under the
    half-open convention ymin <= y < ymax and the crossing lies strictly to
    the right of the point; a point exactly on an edge therefore lands on
    the outside of that edge, deterministically.
    """
    px, py = float(point[0]), float(point[1])
    mask = 0
    for i, curve in enumerate(curves):
        pts = _polyline_of(curve)
        x0, y0 = pts[:-1, 0], pts[:-1, 1]
        x1, y1 = pts[1:, 0], pts[1:, 1]
        ymin = np.minimum(y0, y1)
        ymax = np.maximum(y0, y1)
        hit = (ymin <= py) & (py < ymax)
        if np.any(hit):
            with np.errstate(divide="ignore", invalid="ignore"):
                t = (py - y0[hit]) / (y1[hit] - y0[hit])
            xi = x0[hit] + t * (x1[hit] - x0[hit])
            if np.count_nonzero(xi > px) % 2 == 1:
                mask |= 1 << i
    return mask


def even_odd_fill(polyline: np.ndarray, resolution: int, extent: float = GRID_EXTENT) -> np.ndarray:
    """Boolean inside-mask of one closed polyline on the standard grid.

    Scanline even-odd fill: each edge deposits +1 at the first cell center
    strictly right of its crossing with each spanned row; a row-wise prefix
    sum then gives the crossing parity.  Same half-open convention as
    `classify_by_even_odd`.
    """
    pts = np.asarray(polyline, dtype=float)
    h = 2.0 * extent / resolution
    x0, y0 = pts[:-1, 0], pts[:-1, 1]
    x1, y1 = pts[1:, 0], pts[1:, 1]
    keep = y0 != y1
    x0, y0, x1, y1 = x0[keep], y0[keep], x1[keep], y1[keep]

    ymin = np.minimum(y0, y1)
    ymax = np.maximum(y0, y1)
    # rows whose center y = -extent + (r + 1/2) h falls in [ymin, ymax)
    r_lo = np.ceil((ymin + extent) / h - 0.5).astype(np.int64)
    r_hi = np.ceil((ymax + extent) / h - 0.5).astype(np.int64)
    r_lo = np.clip(r_lo, 0, resolution)
    r_hi = np.clip(r_hi, 0, resolution)
    counts = r_hi - r_lo

    edge_idx = np.repeat(np.arange(x0.size), counts)
    if edge_idx.size == 0:
        return np.zeros((resolution, resolution), dtype=bool)
    offsets = np.arange(edge_idx.size) - np.repeat(
        np.concatenate([[0], np.cumsum(counts)[:-1]]), counts
    )
    rows = r_lo[edge_idx] + offsets
    yc = -extent + (rows + 0.5) * h
    t = (yc - y0[edge_idx]) / (y1[edge_idx] - y0[edge_idx])
    xi = x0[edge_idx] + t * (x1[edge_idx] - x0[edge_idx])
    cols = np.floor((xi + extent) / h - 0.5).astype(np.int64) + 1

    ok = cols < resolution
    rows, cols = rows[ok], np.maximum(cols[ok], 0)
    acc = np.zeros((resolution, resolution), dtype=np.int32)
    np.add.at(acc, (rows, cols), 1)
    return np.cumsum(acc, axis=1) % 2 == 1


def rasterize_polylines(
    curves: Sequence, resolution: int, extent: float = GRID_EXTENT
) -> RasterGrid:
    """Rasterize arbitrary closed polylines with the even-odd backend."""
    _validate_resolution(resolution)
    polys = [_polyline_of(c) for c in curves]
    masks = np.zeros((resolution, resolution), dtype=np.uint16)
    for i, poly in enumerate(polys):
        masks |= even_odd_fill(poly, resolution, extent).astype(np.uint16) << i
    return RasterGrid(masks=masks, resolution=resolution, n=len(polys), extent=extent)


# ---------------------------------------------------------------------------
# Components
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegionComponent:
    """One 4-connected component of a mask region.

    `cells` is a boolean array cropped to the component's bounding box;
    `offset` places that crop in the full grid ((row0, col0)), `origin` is
    the world coordinate of the full grid's lower-left corner and
    `cell_size` its cell edge.  `area` is normalized by the count of grid
    cells inside the radius-2 disk.  `outline` is the marching-squares
    contour of the component in world coordinates (closed); `holes` are
    any inner contours.
    """

    mask: int
    cells: np.ndarray
    offset: tuple[int, int]
    origin: tuple[float, float]
    cell_size: float
    cell_count: int
    area: float
    outline: np.ndarray
    holes: tuple = ()

    def cell_centers(self) -> np.ndarray:
        """(K, 2) world coordinates of the component's cells."""
        rr, cc = np.nonzero(self.cells)
        r0, c0 = self.offset
        h = self.cell_size
        x = self.origin[0] + (cc + c0 + 0.5) * h
        y = self.origin[1] + (rr + r0 + 0.5) * h
        return np.column_stack([x, y])

    def world_to_cell(self, point) -> tuple[int, int]:
        """Local (row, col) of the cell containing a world point."""
        r0, c0 = self.offset
        col = int(np.floor((point[0] - self.origin[0]) / self.cell_size)) - c0
        row = int(np.floor((point[1] - self.origin[1]) / self.cell_size)) - r0
        return row, col

    def contains_point(self, point) -> bool:
        row, col = self.world_to_cell(point)
        if 0 <= row < self.cells.shape[0] and 0 <= col < self.cells.shape[1]:
            return bool(self.cells[row, col])
        return False

    def cell_center_world(self, row: int, col: int) -> tuple[float, float]:
        r0, c0 = self.offset
        h = self.cell_size
        return (
            self.origin[0] + (col + c0 + 0.5) * h,
            self.origin[1] + (row + r0 + 0.5) * h,
        )


def component_from_cells(
    cells: np.ndarray,
    mask: int = 1,
    cell_size: float = 1.0,
    origin: tuple[float, float] = (0.0, 0.0),
    area: float | None = None,
) -> RegionComponent:
    """Wrap a boolean cell array as a RegionComponent (fixtures, custom rasters)."""
    cells = np.asarray(cells, dtype=bool)
    count = int(np.count_nonzero(cells))
    if count == 0:
        raise ValueError("component must contain at least one cell")
    outline, holes = _component_contours(cells, (0, 0), origin, cell_size)
    return RegionComponent(
        mask=mask,
        cells=cells,
        offset=(0, 0),
        origin=origin,
        cell_size=cell_size,
        cell_count=count,
        area=count / cells.size if area is None else area,
        outline=outline,
        holes=holes,
    )


def _component_contours(local: np.ndarray, offset, origin, h):
    """Marching-squares outline (and holes) of a cropped boolean mask."""
    padded = np.pad(local, 1).astype(np.uint8)
    contours = measure.find_contours(padded, 0.5)
    world = []
    for cont in contours:
        rows = cont[:, 0] - 1 + offset[0]
        cols = cont[:, 1] - 1 + offset[1]
        world.append(
            np.column_stack(
                [origin[0] + (cols + 0.5) * h, origin[1] + (rows + 0.5) * h]
            )
        )
    # outer contour = the one spanning the largest bounding box
    spans = [np.ptp(w, axis=0).sum() for w in world]
    outer = int(np.argmax(spans))
    holes = tuple(w for k, w in enumerate(world) if k != outer)
    return world[outer], holes


def extract_components(grid: RasterGrid) -> list[RegionComponent]:
    """4-connected components of every mask region, with areas and outlines."""
    labels = measure.label(grid.masks.astype(np.int32), background=-1, connectivity=1)
    objects = ndimage.find_objects(labels)
    counts = np.bincount(labels.ravel())
    denom = grid.disk_cell_count()
    origin = (-grid.extent, -grid.extent)
    h = grid.cell_size

    components = []
    for lab, sl in enumerate(objects, start=1):
        if sl is None:
            continue
        local = labels[sl] == lab
        r0, c0 = sl[0].start, sl[1].start
        rr, cc = np.nonzero(local)
        mask = int(grid.masks[sl][rr[0], cc[0]])
        outline, holes = _component_contours(local, (r0, c0), origin, h)
        components.append(
            RegionComponent(
                mask=mask,
                cells=local,
                offset=(r0, c0),
                origin=origin,
                cell_size=h,
                cell_count=int(counts[lab]),
                area=float(counts[lab]) / denom,
                outline=outline,
                holes=holes,
            )
        )
    return components


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiagramReport:
    """Verdicts and per-mask measurements for one diagram."""

    n: int
    is_independent_family: bool
    is_venn: bool
    is_simple: Union[bool, str]  # True, False, or "unknown"
    components_per_mask: dict
    areas: dict
    tiny_regions: tuple

    def to_json_dict(self) -> dict:
        return {
            "isIndependentFamily": self.is_independent_family,
            "isVenn": self.is_venn,
            "isSimple": self.is_simple,
            "componentsPerMask": {
                mask_to_string(m, self.n): c for m, c in sorted(self.components_per_mask.items())
            },
            "areas": {
                mask_to_string(m, self.n): round(a, 12) for m, a in sorted(self.areas.items())
            },
            "tinyRegions": [
                {"mask": mask_to_string(m, self.n), "area": round(a, 12)}
                for m, a in self.tiny_regions
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def _intersection_points(poly_a: np.ndarray, poly_b: np.ndarray) -> np.ndarray:
    """All intersection points of two polylines (overlap segments contribute
    their endpoints and midpoint)."""
    inter = LineString(poly_a).intersection(LineString(poly_b))
    pts = []

    def collect(geom):
        if geom.is_empty:
            return
        gtype = geom.geom_type
        if gtype == "Point":
            pts.append([geom.x, geom.y])
        elif gtype == "LineString":
            coords = np.asarray(geom.coords)
            pts.append(coords[0])
            pts.append(coords[-1])
            pts.append(coords.mean(axis=0))
        elif gtype in ("MultiPoint", "MultiLineString", "GeometryCollection"):
            for g in geom.geoms:
                collect(g)

    collect(inter)
    return np.asarray(pts, dtype=float).reshape(-1, 2)


def _check_simplicity(polys: Sequence[np.ndarray], tol: float) -> Union[bool, str]:
    """True / False / "unknown" for the at-most-two-boundaries predicate.

    Pairwise intersection points are clustered with linkage radius `tol`
    (two grid cells); a cluster touched by >= 3 distinct boundaries means
    not simple.  If two clusters lie closer than 2 tol and jointly involve
    >= 3 boundaries, localization is ambiguous at this sampling density
    and the verdict is "unknown".
    """
    points = []
    owners = []
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            pts = _intersection_points(polys[i], polys[j])
            for p in pts:
                points.append(p)
                owners.append((i, j))
    if not points:
        return True
    points = np.asarray(points)

    tree = cKDTree(points)
    pairs = tree.query_pairs(tol, output_type="ndarray")
    parent = np.arange(len(points))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    clusters: dict[int, set[int]] = {}
    centers: dict[int, list[np.ndarray]] = {}
    for k in range(len(points)):
        root = find(k)
        clusters.setdefault(root, set()).update(owners[k])
        centers.setdefault(root, []).append(points[k])

    roots = list(clusters)
    curve_sets = [clusters[r] for r in roots]
    if any(len(s) >= 3 for s in curve_sets):
        return False

    cluster_pts = np.array([np.mean(centers[r], axis=0) for r in roots])
    ctree = cKDTree(cluster_pts)
    for a, b in ctree.query_pairs(2.0 * tol, output_type="ndarray"):
        if len(curve_sets[a] | curve_sets[b]) >= 3:
            return "unknown"
    return True


def verify(
    spec: Optional[CurveSpec],
    grid: RasterGrid,
    boundaries: Sequence,
    tiny_threshold: Optional[float] = None,
) -> DiagramReport:
    """Check the independent-family / Venn / simple predicates.

    `spec` may be None for grids built from bare polylines (even-odd
    backend); otherwise it must be the spec the grid was rasterized from.
    `tiny_threshold` is a normalized-area cutoff (default: 4 cells).  A
    mask passes the Venn check when exactly one of its components reaches
    the threshold; sub-threshold components are listed in `tiny_regions`
    but do not fail the check, since they are covered by any reasonable
    stroke width when drawn.
    """
    if spec is not None and grid.spec is not None and grid.spec != spec:
        raise ValueError("grid was rasterized from a different spec")
    if len(boundaries) != grid.n:
        raise ValueError(f"expected {grid.n} boundaries, got {len(boundaries)}")
    for b in boundaries:
        if isinstance(b, SampledBoundary) and spec is not None and b.spec != spec:
            raise ValueError("boundary sampled from a different spec")

    if tiny_threshold is None:
        tiny_threshold = TINY_CELLS / grid.disk_cell_count()

    components = extract_components(grid)
    n = grid.n
    counts = {m: 0 for m in range(2 ** n)}
    areas = {m: 0.0 for m in range(2 ** n)}
    big = {m: 0 for m in range(2 ** n)}
    tiny = []
    for comp in components:
        counts[comp.mask] += 1
        areas[comp.mask] += comp.area
        if comp.area >= tiny_threshold:
            big[comp.mask] += 1
        else:
            tiny.append((comp.mask, comp.area))

    independent = all(c > 0 for c in counts.values())
    venn = independent and all(b == 1 for b in big.values())

    polys = [_polyline_of(b) for b in boundaries]
    simple = _check_simplicity(polys, tol=2.0 * grid.cell_size)

    return DiagramReport(
        n=n,
        is_independent_family=independent,
        is_venn=venn,
        is_simple=simple,
        components_per_mask=counts,
        areas=areas,
        tiny_regions=tuple(sorted(tiny)),
    )


# ---------------------------------------------------------------------------
# Area statistics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AreaStats:
    """Summary of log10 normalized region areas (outer region excluded)."""

    min: float
    max: float
    mean: float
    std: float
    hist_counts: np.ndarray
    hist_edges: np.ndarray


def area_stats(report: DiagramReport, bins: int = 20) -> AreaStats:
    """Distribution of log10 normalized areas over the 2^n - 1 inner masks.

    The all-zeros (outer) mask is excluded: it is the frame complement
    after projection, not a diagram region.  Raises if any mask is empty.
    """
    empty = [m for m, a in report.areas.items() if a <= 0.0]
    if empty:
        raise ValueError(
            f"{len(empty)} masks have no area; run verify() and check "
            "is_independent_family before computing area statistics"
        )
    logs = np.array(
        [np.log10(a) for m, a in sorted(report.areas.items()) if m != 0]
    )
    counts, edges = np.histogram(logs, bins=bins)
    return AreaStats(
        min=float(logs.min()),
        max=float(logs.max()),
        mean=float(logs.mean()),
        std=float(logs.std()),
        hist_counts=counts,
        hist_edges=edges,
    )
