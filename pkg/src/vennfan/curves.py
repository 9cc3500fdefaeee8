"""Shaped trigonometric boundary curves and their projection onto the disc.

Each of the n set boundaries starts life as a graph y = f_i(x) on a strip:
a sine or cosine of frequency 2^i (2^(i-1) for the cosine family), raised
to a power p while keeping its sign, and scaled by a per-curve amplitude
lambda(i) produced by a decay scheme.  Mapping (x, f) to the plane via
radius 1 + f at polar angle theta turns each graph into a closed curve
winding around the unit circle; the fan-blade diagrams are the overlays
of these curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

TWO_PI = 2.0 * np.pi

#: x-domain of the strip graphs, per variant.
DOMAINS = {
    "sine": (-np.pi, np.pi),
    "cosine": (TWO_PI, 2.0 * TWO_PI),
}


@dataclass(frozen=True)
class SmithExponential:
    """Halving amplitudes, lambda(i) = 2**-i.

    This is the classical unshaped baseline.  It is exempt from the strict
    |f| < 1 requirement (lambda(0) = 1, so the first curve touches radius
    0 and 2 at isolated points) and from the lambda(n-1) = 0 rule.
    """


@dataclass(frozen=True)
class Linear:
    """lambda(i) = (n - 1 - i) / n; the last curve gets amplitude 0."""


@dataclass(frozen=True)
class ModifiedExponential:
    """lambda(i) = b**(i + eps) for i < n-1, and lambda(n-1) = 0.

    Requires 1/2 < b < 1.  eps > 0 keeps lambda(0) = b**eps strictly below
    1; passing eps = 0 substitutes the guard value 1e-3, since b**0 = 1
    would let the first curve reach the origin.
    """

    b: float
    eps: float = 1e-3

    def __post_init__(self) -> None:
        if not 0.5 < self.b < 1.0:
            raise ValueError(
                f"ModifiedExponential base b must lie in (1/2, 1), got {self.b}"
            )
        if self.eps < 0.0:
            raise ValueError(f"ModifiedExponential eps must be >= 0, got {self.eps}")
        if self.eps == 0.0:
            object.__setattr__(self, "eps", 1e-3)


@dataclass(frozen=True)
class ModifiedLinear:
    """Linear amplitude ramp from 1 - eps down to delta, then 0.

    lambda(i) = (delta + eps - 1)/(n - 2) * i + 1 - eps for i < n-1, and
    lambda(n-1) = 0.  delta sets the amplitude of the fastest nonzero
    curve (the smallest fan blades), eps the gap below 1 taken by the
    first curve.  For n = 2 only lambda(0) = 1 - eps is used.
    """

    delta: float
    eps: float

    def __post_init__(self) -> None:
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"ModifiedLinear delta must lie in (0, 1), got {self.delta}")
        if not 0.0 < self.eps < 1.0:
            raise ValueError(f"ModifiedLinear eps must lie in (0, 1), got {self.eps}")


DecayScheme = Union[SmithExponential, Linear, ModifiedExponential, ModifiedLinear]


def decay_value(scheme: DecayScheme, i: int, n: int) -> float:
    """Amplitude lambda(i) of curve i under `scheme` for an n-set diagram."""
    if not 0 <= i <= n - 1:
        raise ValueError(f"curve index {i} outside 0..{n - 1}")
    if isinstance(scheme, SmithExponential):
        return 2.0 ** -i
    if isinstance(scheme, Linear):
        return (n - 1 - i) / n
    if i == n - 1:
        return 0.0
    if isinstance(scheme, ModifiedExponential):
        return scheme.b ** (i + scheme.eps)
    if isinstance(scheme, ModifiedLinear):
        if n == 2:
            return 1.0 - scheme.eps
        return (scheme.delta + scheme.eps - 1.0) / (n - 2) * i + 1.0 - scheme.eps
    raise TypeError(f"unknown decay scheme {scheme!r}")


@dataclass(frozen=True)
class CurveSpec:
    """Full parameterization of one diagram.

    Parameters
    ----------
    variant : {"sine", "cosine"}
        Trigonometric family.  Sine curves have frequency 2^i on
        [-pi, pi]; cosine curves have frequency 2^(i-1) on [2pi, 4pi]
        (the i = 0 curve does not close on its own and is completed by a
        straight segment, see `sample_boundary`).
    n : int
        Number of sets, >= 2.
    p : float
        Shape exponent, > 0.  p < 1 fattens the waves toward square
        waves; p = 1 leaves them unshaped.
    decay : DecayScheme
        Amplitude scheme.  Except for the SmithExponential baseline, the
        amplitudes must all stay strictly below 1 so that no curve can
        reach the origin.
    """

    variant: str
    n: int
    p: float
    decay: DecayScheme

    def __post_init__(self) -> None:
        if self.variant not in DOMAINS:
            raise ValueError(f"variant must be 'sine' or 'cosine', got {self.variant!r}")
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not self.p > 0.0:
            raise ValueError(f"shape exponent p must be > 0, got {self.p}")
        if not isinstance(
            self.decay, (SmithExponential, Linear, ModifiedExponential, ModifiedLinear)
        ):
            raise TypeError(f"unknown decay scheme {self.decay!r}")
        amps = [decay_value(self.decay, i, self.n) for i in range(self.n)]
        if not isinstance(self.decay, SmithExponential):
            offending = [i for i, a in enumerate(amps) if a >= 1.0]
            if offending:
                raise ValueError(
                    "decay admits |f| >= 1 for curve indices "
                    f"{offending}; amplitudes must stay strictly below 1"
                )
        if isinstance(self.decay, (ModifiedExponential, ModifiedLinear)):
            ramp = amps[: self.n - 1]
            if any(b >= a for a, b in zip(ramp, ramp[1:])):
                raise ValueError(
                    "amplitudes must be strictly decreasing over curves "
                    f"0..{self.n - 2}, got {ramp}"
                )
            if any(not 0.0 < a < 1.0 for a in ramp):
                raise ValueError(f"amplitudes of curves 0..{self.n - 2} must lie in (0, 1), got {ramp}")

    @property
    def domain(self) -> tuple[float, float]:
        return DOMAINS[self.variant]

    def amplitude(self, i: int) -> float:
        return decay_value(self.decay, i, self.n)

    def theta_offset(self) -> float:
        """Offset subtracted from x so the polar angle sweeps the usual range.

        Sine: theta = x on [-pi, pi].  Cosine: theta = x - 2pi on [0, 2pi],
        which keeps the left-to-right order of the strip picture.
        """
        return 0.0 if self.variant == "sine" else TWO_PI


def _trig_of_halfturns(variant: str, u):
    """sin(pi u) or cos(pi u), with exact zeros.

    Shaping raises |trig| to a power p < 1, which blows the usual 1e-16
    float residue at the zeros up to visible size ((1e-16)**(1/7) is about
    5e-3), so the zeros are pinned exactly after reducing u mod 2.
    """
    r = u - 2.0 * np.round(0.5 * u)
    if variant == "sine":
        s = np.sin(np.pi * r)
        return np.where(r == np.round(r), 0.0, s)
    s = np.cos(np.pi * r)
    return np.where(np.abs(r) == 0.5, 0.0, s)


def _shape(s, p):
    return np.sign(s) * np.abs(s) ** p


def _halfturns_of_x(spec: CurveSpec, i: int, x):
    """Frequency-scaled angle in half-turn units: 2^i x / pi (cosine: 2^(i-1))."""
    freq = 2.0 ** i if spec.variant == "sine" else 2.0 ** (i - 1)
    return np.asarray(x, dtype=float) * (freq / np.pi)


def shaped_trig(spec: CurveSpec, i: int, x):
    """Evaluate f_i(x) = lambda(i) * sgn(trig) * |trig|**p.

    `x` may be a scalar or an ndarray; the trig is sin(2^i x) for the sine
    variant and cos(2^(i-1) x) for the cosine variant.
    """
    if not 0 <= i <= spec.n - 1:
        raise ValueError(f"curve index {i} outside 0..{spec.n - 1}")
    lam = spec.amplitude(i)
    x = np.asarray(x, dtype=float)
    if lam == 0.0:
        return np.zeros_like(x)
    return lam * _shape(_trig_of_halfturns(spec.variant, _halfturns_of_x(spec, i, x)), spec.p)


@dataclass(frozen=True)
class SampledBoundary:
    """One boundary, as strip samples and as a projected closed polyline.

    `projected` is closed exactly (last point == first point).  For the
    cosine i = 0 curve the closing edge is the straight `closure_segment`
    joining the curve's two endpoints on the positive x-axis; for every
    other curve the two endpoints already coincide and are snapped.
    """

    index: int
    spec: CurveSpec
    strip_x: np.ndarray
    strip_f: np.ndarray
    projected: np.ndarray
    closure_segment: np.ndarray | None = None

    @property
    def strip_samples(self) -> np.ndarray:
        """(N, 2) array of (x, f) pairs."""
        return np.column_stack([self.strip_x, self.strip_f])


def sample_boundary(spec: CurveSpec, i: int, samples_per_flip: int = 64) -> SampledBoundary:
    """Sample boundary i densely and project it onto the disc.

    The grid has samples_per_flip * 2^n points, which gives the fastest
    curve at least samples_per_flip points per sign half-wave.  Projection:
    (x, f) -> ((1 + f) cos theta, (1 + f) sin theta).
    """
    if samples_per_flip < 8:
        raise ValueError(f"samples_per_flip must be >= 8, got {samples_per_flip}")
    x0, x1 = spec.domain
    count = samples_per_flip * 2 ** spec.n
    # Dyadic parameter grid: in half-turn units the sample angles are exact,
    # so every sample that lands on a trig zero really evaluates to zero.
    t = np.arange(count + 1) / count
    x = x0 + (x1 - x0) * t
    lam = spec.amplitude(i)
    if lam == 0.0:
        f = np.zeros_like(t)
    else:
        if spec.variant == "sine":
            u = 2.0 ** i * (2.0 * t - 1.0)
        else:
            u = 2.0 ** i * (1.0 + t)
        f = lam * _shape(_trig_of_halfturns(spec.variant, u), spec.p)
    theta = x - spec.theta_offset()
    radius = 1.0 + f
    pts = np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])

    closure = None
    if spec.variant == "cosine" and i == 0:
        # cos(x/2) ends at a different radius than it starts; close with a
        # straight radial segment along the positive x-axis.
        closure = np.array([pts[0], pts[-1]])
        projected = np.vstack([pts, pts[:1]])
    else:
        gap = float(np.hypot(*(pts[-1] - pts[0])))
        if gap > 1e-9:
            raise AssertionError(f"boundary {i} failed to close (gap {gap:.3e})")
        projected = pts.copy()
        projected[-1] = projected[0]

    return SampledBoundary(
        index=i,
        spec=spec,
        strip_x=x,
        strip_f=np.asarray(f, dtype=float),
        projected=projected,
        closure_segment=closure,
    )


def sample_all_boundaries(spec: CurveSpec, samples_per_flip: int = 64) -> list[SampledBoundary]:
    """All n boundaries of `spec`, in curve-index order."""
    return [sample_boundary(spec, i, samples_per_flip) for i in range(spec.n)]
