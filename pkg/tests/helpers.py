"""Shared oracles and fixtures for the test suite."""

from __future__ import annotations

import numpy as np
from scipy import ndimage

import vennfan as vf


def sweep_gray_oracle(n: int, samples_per_flip: int = 64) -> list[int]:
    """Gray sequence from a dense sign sweep of the sine family.

    Track the signs of sin(2^i x) for i = 0..n-1 over (0, 2pi); at every
    change event flip the slowest index whose sign changed (at shared
    zeros the faster curves' changes ride along with the slowest one).
    """
    xs = np.linspace(0.0, 2.0 * np.pi, samples_per_flip * 2 ** n + 1)[1:-1]
    signs = np.sign(np.sin(np.outer(2.0 ** np.arange(n), xs)))
    changed = signs[:, 1:] != signs[:, :-1]
    events = np.nonzero(changed.any(axis=0))[0]
    seq = [0]
    cur = 0
    for col in events:
        cur ^= 1 << int(np.nonzero(changed[:, col])[0].min())
        seq.append(cur)
    return seq


def brute_force_visual_center(cells: np.ndarray):
    """O(cells^2) nearest-non-region scan; argmax in C order like the EDT path."""
    cells = np.asarray(cells, dtype=bool)
    rr, cc = np.nonzero(cells)
    br, bc = np.nonzero(~cells)
    bg = np.column_stack([br, bc]).astype(float)
    best = np.empty(rr.size)
    for k in range(rr.size):
        d2 = (bg[:, 0] - rr[k]) ** 2 + (bg[:, 1] - cc[k]) ** 2
        best[k] = np.sqrt(d2.min())
    flat = np.full(cells.shape, -1.0)
    flat[rr, cc] = best
    row, col = np.unravel_index(int(np.argmax(flat)), cells.shape)
    return (row, col), float(flat[row, col])


def partition_boundary_cells(masks: np.ndarray) -> np.ndarray:
    """Cells adjacent (4-neighborhood) to a cell with a different mask."""
    b = np.zeros(masks.shape, dtype=bool)
    b[:-1] |= masks[:-1] != masks[1:]
    b[1:] |= masks[:-1] != masks[1:]
    b[:, :-1] |= masks[:, :-1] != masks[:, 1:]
    b[:, 1:] |= masks[:, :-1] != masks[:, 1:]
    return b


def densify_polyline(pts: np.ndarray, max_step: float) -> np.ndarray:
    seg = np.diff(pts, axis=0)
    lengths = np.hypot(seg[:, 0], seg[:, 1])
    k = np.maximum(1, np.ceil(lengths / max_step).astype(int))
    parts = [pts[:1]]
    for a, d, kk in zip(pts[:-1], seg, k):
        ts = np.arange(1, kk + 1) / kk
        parts.append(a + ts[:, None] * d)
    return np.vstack(parts)


def mark_polyline_cells(polys, grid: vf.RasterGrid, dilate: int = 1) -> np.ndarray:
    """Boolean grid of cells touched by the polylines (optionally dilated)."""
    near = np.zeros((grid.resolution, grid.resolution), dtype=bool)
    h = grid.cell_size
    for pts in polys:
        dense = densify_polyline(np.asarray(pts, float), 0.5 * h)
        cols = np.clip(((dense[:, 0] + grid.extent) / h).astype(int), 0, grid.resolution - 1)
        rows = np.clip(((dense[:, 1] + grid.extent) / h).astype(int), 0, grid.resolution - 1)
        near[rows, cols] = True
    if dilate:
        near = ndimage.binary_dilation(near, iterations=dilate)
    return near


def big_components_per_mask(grid: vf.RasterGrid, components=None):
    """(above-threshold counts, stray components) at the 4-cell tiny cutoff."""
    if components is None:
        components = vf.extract_components(grid)
    threshold = 4 / grid.disk_cell_count()
    big = {m: 0 for m in range(2 ** grid.n)}
    strays = []
    for comp in components:
        if comp.area >= threshold:
            big[comp.mask] += 1
        else:
            strays.append(comp)
    return big, strays


def disk_cells(radius: float, size: int) -> np.ndarray:
    yy, xx = np.mgrid[0:size, 0:size]
    c = (size - 1) / 2.0
    return (xx - c) ** 2 + (yy - c) ** 2 <= radius ** 2


def annular_sector_cells(size: int = 96) -> np.ndarray:
    """Fan-blade-like fixture: radii in (0.55, 0.92) R, angles in (15, 110) deg."""
    yy, xx = np.mgrid[0:size, 0:size]
    c = (size - 1) / 2.0
    r = np.hypot(xx - c, yy - c) / c
    ang = np.degrees(np.arctan2(yy - c, xx - c))
    return (r > 0.55) & (r < 0.92) & (ang > 15.0) & (ang < 110.0)
