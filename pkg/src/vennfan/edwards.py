"""Spherical cogwheel Venn diagrams and their planar projections.

The n-set diagram on the unit sphere consists of the equator, two
mutually orthogonal longitude circles, and, for each further set, a
"cogwheel" curve assembled from the circles cut by the side faces of a
regular 2^k-gonal prism: alternate northern and southern semicircular
arcs chained at their shared equator points.  Stereographic projection
yields the planar cogwheel diagrams; orthogonal projection onto the
equatorial disk is provided for illustration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

TILT_RAD = 1e-3  # pole tilt applied when a curve would hit the projection pole


@dataclass(frozen=True)
class Arc:
    """Circular arc on the unit sphere.

    Points are cos(alpha) * axis + sin(alpha) * (cos t * e1 + sin t * e2)
    for t from t_start to t_end (either direction).
    """

    axis: np.ndarray
    angular_radius: float
    e1: np.ndarray
    e2: np.ndarray
    t_start: float
    t_end: float

    def point(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        ca, sa = np.cos(self.angular_radius), np.sin(self.angular_radius)
        return (
            ca * self.axis[:, None]
            + sa * (np.cos(t) * self.e1[:, None] + np.sin(t) * self.e2[:, None])
        ).T

    def sample(self, count: int) -> np.ndarray:
        ts = np.linspace(self.t_start, self.t_end, count)
        return self.point(ts)


@dataclass(frozen=True)
class SphericalCurve:
    """A closed loop on the sphere, as a chain of arcs."""

    index: int
    arcs: tuple

    def sample(self, samples: int) -> np.ndarray:
        """Closed (first == last) polyline of about `samples` points."""
        per_arc = max(32, samples // len(self.arcs))
        parts = [arc.sample(per_arc + 1)[:-1] for arc in self.arcs]
        pts = np.vstack(parts + [parts[0][:1]])
        return pts

    def chain_gaps(self) -> np.ndarray:
        """Distances between consecutive arc endpoints (wrapping)."""
        gaps = []
        for a, b in zip(self.arcs, self.arcs[1:] + self.arcs[:1]):
            end = a.point(a.t_end)[0]
            start = b.point(b.t_start)[0]
            gaps.append(np.linalg.norm(end - start))
        return np.asarray(gaps)


@dataclass(frozen=True)
class CogwheelDiagram:
    n: int
    curves: tuple
    pole: str = "north"  # projection pole
    plane_offset: float = 1.0  # projection plane distance from the center


_X = np.array([1.0, 0.0, 0.0])
_Y = np.array([0.0, 1.0, 0.0])
_Z = np.array([0.0, 0.0, 1.0])


def default_schedule(n: int) -> list[int]:
    """Prism face counts 4, 8, 16, ... for the n - 3 cogwheel curves."""
    return [2 ** (j + 2) for j in range(n - 3)]


def _great_circle(index: int, axis: np.ndarray, e1: np.ndarray, e2: np.ndarray) -> SphericalCurve:
    arc = Arc(axis=axis, angular_radius=np.pi / 2, e1=e1, e2=e2, t_start=0.0, t_end=2.0 * np.pi)
    return SphericalCurve(index=index, arcs=(arc,))


def _cogwheel_curve(index: int, sides: int) -> SphericalCurve:
    """Closed loop of `sides` alternating semicircular arcs.

    The prism's base polygon is inscribed in the equator, so each side
    face cuts the sphere in a circle of angular radius pi/sides whose
    equator crossings are the polygon vertices, at longitudes
    (2m +- 1) pi / sides.  Those odd-multiple longitudes interleave with
    every other curve's crossings, so no two crossings coincide.
    """
    arcs = []
    for m in range(sides):
        phi = 2.0 * np.pi * m / sides
        normal = np.array([np.cos(phi), np.sin(phi), 0.0])
        tangent = np.array([-np.sin(phi), np.cos(phi), 0.0])
        # t climbs from the vertex at phi - pi/sides (t = pi) to the vertex
        # at phi + pi/sides (t = 0 or 2pi); even teeth arch north, odd south.
        if m % 2 == 0:
            t_start, t_end = np.pi, 0.0
        else:
            t_start, t_end = np.pi, 2.0 * np.pi
        arcs.append(
            Arc(
                axis=normal,
                angular_radius=np.pi / sides,
                e1=tangent,
                e2=_Z,
                t_start=t_start,
                t_end=t_end,
            )
        )
    return SphericalCurve(index=index, arcs=tuple(arcs))


def build_cogwheel(
    n: int, sides_schedule: Sequence[int] | None = None, pole: str = "north"
) -> CogwheelDiagram:
    """Spherical n-set Venn diagram: equator, two longitudes, n - 3 cogwheels."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if pole not in ("north", "south"):
        raise ValueError(f"pole must be 'north' or 'south', got {pole!r}")
    if sides_schedule is None:
        sides_schedule = default_schedule(n)
    sides_schedule = list(sides_schedule)
    if len(sides_schedule) != n - 3:
        raise ValueError(
            f"sides_schedule must have {n - 3} entries for n = {n}, got {len(sides_schedule)}"
        )
    for s in sides_schedule:
        if s < 4 or s & (s - 1):
            raise ValueError(f"schedule entries must be powers of two >= 4, got {s}")
    prev = 0
    for s in sides_schedule:
        if s <= prev:
            raise ValueError(f"sides_schedule must be strictly increasing, got {sides_schedule}")
        prev = s

    curves: List[SphericalCurve] = [
        _great_circle(0, _Z, _X, _Y),  # equator
        _great_circle(1, _X, _Y, _Z),  # longitude in the yz-plane
        _great_circle(2, _Y, _Z, _X),  # longitude in the xz-plane
    ]
    for j, sides in enumerate(sides_schedule):
        curves.append(_cogwheel_curve(3 + j, sides))
    return CogwheelDiagram(n=n, curves=tuple(curves), pole=pole)


# ---------------------------------------------------------------------------
# Projections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjectionResult:
    curves: tuple  # closed planar polylines
    tilted: bool
    tilt_rad: float
    pole: str
    mirrored: bool = False


def equatorial_project(diagram: CogwheelDiagram, samples: int = 2048) -> list[np.ndarray]:
    """Orthogonal projection (x, y, z) -> (x, y).

    Longitude circles degenerate into diameters traversed twice; the result
    is for drawing the prism-base picture, not for region analysis (the
    projection maps both hemispheres onto the same disk).
    """
    return [curve.sample(samples)[:, :2] for curve in diagram.curves]


def _tilt_rotation(tilt: float) -> np.ndarray:
    """Rotation moving the z-axis by `tilt` toward longitude 45 degrees.

    That direction stays clear of both longitude planes, the equator
    plane, and every prism face plane, so the tilted poles avoid all
    curves.
    """
    c, s = np.cos(tilt), np.sin(tilt)
    ry = np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    q = np.pi / 4
    rz = np.array(
        [[np.cos(q), -np.sin(q), 0.0], [np.sin(q), np.cos(q), 0.0], [0.0, 0.0, 1.0]]
    )
    return rz @ ry @ rz.T


def _min_pole_distance(diagram: CogwheelDiagram, pole_vec: np.ndarray) -> float:
    best = np.inf
    for curve in diagram.curves:
        pts = curve.sample(1024)
        best = min(best, float(np.min(np.linalg.norm(pts - pole_vec, axis=1))))
    return best


def stereographic_project(diagram: CogwheelDiagram, samples: int = 4096) -> ProjectionResult:
    """Stereographic projection onto the plane tangent at the opposite pole.

    Projecting from the north pole gives the canonical planar cogwheels;
    from the south pole, the image is mirrored horizontally to produce the
    inside-out variant.  If any curve passes through the projection pole
    (the longitudes always do), the whole configuration is first tilted by
    a fixed 1e-3 rad, recorded in the result.
    """
    sign = 1.0 if diagram.pole == "north" else -1.0
    pole_vec = sign * _Z

    tilted = _min_pole_distance(diagram, pole_vec) < 1e-6
    rot = _tilt_rotation(TILT_RAD) if tilted else np.eye(3)

    d = float(diagram.plane_offset)
    planar = []
    for curve in diagram.curves:
        # row-vector form of p -> rot^T p: undoes the pole tilt
        pts = curve.sample(samples) @ rot
        z = sign * pts[:, 2]
        denom = 1.0 - z
        if np.any(denom < 1e-9):
            raise ValueError(
                f"curve {curve.index} passes through the projection pole even after tilting"
            )
        scale = (1.0 + d) / denom
        uv = pts[:, :2] * scale[:, None]
        if diagram.pole == "south":
            uv = uv * np.array([-1.0, 1.0])  # horizontal mirror
        uv[-1] = uv[0]
        planar.append(uv)
    return ProjectionResult(
        curves=tuple(planar),
        tilted=tilted,
        tilt_rad=TILT_RAD if tilted else 0.0,
        pole=diagram.pole,
        mirrored=diagram.pole == "south",
    )
