"""Named parameter presets covering n = 2..9 for both curve families."""

from __future__ import annotations

from .curves import (
    CurveSpec,
    Linear,
    ModifiedExponential,
    ModifiedLinear,
    SmithExponential,
)


def _ml(variant: str, n: int, p: float, delta: float, eps: float) -> CurveSpec:
    return CurveSpec(variant=variant, n=n, p=p, decay=ModifiedLinear(delta=delta, eps=eps))


PRESETS: dict[str, CurveSpec] = {}

# small diagrams: the ramped linear decay with roomy blades
for _v in ("sine", "cosine"):
    for _n in (2, 3, 4, 5):
        PRESETS[f"{_v}-n{_n}"] = _ml(_v, _n, p=1 / 5, delta=1 / 3, eps=1 / 9)

# the canonical mid/large diagrams
for _v in ("sine", "cosine"):
    PRESETS[f"{_v}-n6"] = _ml(_v, 6, p=1 / 5, delta=1 / 4, eps=1 / 7)
    PRESETS[f"{_v}-n7"] = _ml(_v, 7, p=1 / 7, delta=1 / 4, eps=1 / 7)
    PRESETS[f"{_v}-n8"] = _ml(_v, 8, p=1 / 7, delta=1 / 5, eps=1 / 8)
    PRESETS[f"{_v}-n9"] = _ml(_v, 9, p=1 / 7, delta=1 / 6, eps=1 / 8)

# alternative decays and styling extremes
PRESETS["sine-n6-linear"] = CurveSpec("sine", 6, p=1 / 3, decay=Linear())
PRESETS["sine-n6-exp"] = CurveSpec("sine", 6, p=1 / 5, decay=ModifiedExponential(b=4 / 5))
for _v in ("sine", "cosine"):
    PRESETS[f"{_v}-n6-extreme"] = CurveSpec(
        _v, 6, p=1 / 1000, decay=ModifiedExponential(b=5 / 6)
    )
    PRESETS[f"{_v}-n6-unmodified"] = CurveSpec(_v, 6, p=1.0, decay=SmithExponential())

# the flat-decay pair used for area-spread comparisons against the cogwheels
PRESETS["cosine-n6-flat"] = _ml("cosine", 6, p=1 / 5, delta=1 / 3, eps=1 / 9)
PRESETS["cosine-n7-flat"] = _ml("cosine", 7, p=1 / 5, delta=1 / 3, eps=1 / 9)


def get_preset(name: str) -> CurveSpec:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None
