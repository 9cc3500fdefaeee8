"""Fan-blade n-set Venn diagrams from shaped trigonometric curves."""

from .curves import (
    CurveSpec,
    Linear,
    ModifiedExponential,
    ModifiedLinear,
    SampledBoundary,
    SmithExponential,
    decay_value,
    sample_all_boundaries,
    sample_boundary,
    shaped_trig,
)
from .edwards import (
    CogwheelDiagram,
    SphericalCurve,
    build_cogwheel,
    equatorial_project,
    stereographic_project,
)
from .labels import (
    GrayOrder,
    LabelConfig,
    LabelPlan,
    centroid,
    erode_to_fraction,
    gray_order,
    longest_segment,
    plan_labels,
    radial_anchors,
    visual_center,
)
from .presets import PRESETS, get_preset
from .regions import (
    AreaStats,
    DiagramReport,
    RasterGrid,
    RegionComponent,
    area_stats,
    classify_by_even_odd,
    classify_point,
    component_from_cells,
    extract_components,
    mask_to_string,
    rasterize,
    rasterize_polylines,
    rasterize_strip,
    string_to_mask,
    verify,
)
from .render import RenderConfig, RenderResult, render_diagram

__version__ = "0.1.0"

__all__ = [
    "AreaStats",
    "CogwheelDiagram",
    "CurveSpec",
    "DiagramReport",
    "GrayOrder",
    "LabelConfig",
    "LabelPlan",
    "Linear",
    "ModifiedExponential",
    "ModifiedLinear",
    "PRESETS",
    "RasterGrid",
    "RegionComponent",
    "RenderConfig",
    "RenderResult",
    "SampledBoundary",
    "SmithExponential",
    "SphericalCurve",
    "area_stats",
    "build_cogwheel",
    "centroid",
    "classify_by_even_odd",
    "classify_point",
    "component_from_cells",
    "decay_value",
    "equatorial_project",
    "erode_to_fraction",
    "extract_components",
    "get_preset",
    "gray_order",
    "longest_segment",
    "mask_to_string",
    "plan_labels",
    "radial_anchors",
    "rasterize",
    "rasterize_polylines",
    "rasterize_strip",
    "render_diagram",
    "sample_all_boundaries",
    "sample_boundary",
    "shaped_trig",
    "stereographic_project",
    "string_to_mask",
    "verify",
    "visual_center",
]
