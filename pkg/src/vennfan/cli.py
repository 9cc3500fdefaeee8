"""Command-line surface: generate, verify, areas, edwards.

Exit codes: 0 on success (for `verify`: the curves form an independent
family), 1 when verification fails, 2 on usage or validation errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import edwards as edw
from .curves import (
    CurveSpec,
    Linear,
    ModifiedExponential,
    ModifiedLinear,
    SmithExponential,
    sample_all_boundaries,
)
from .labels import LabelConfig, plan_labels
from .presets import PRESETS, get_preset
from .regions import (
    area_stats,
    extract_components,
    mask_to_string,
    rasterize,
    rasterize_polylines,
    verify,
)
from .render import RenderConfig, render_diagram

MAX_SETS = 9  # diagrams stop being readable well before this


# ---------------------------------------------------------------------------
# Membership ingestion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MembershipData:
    """Element-to-sets assignments: one mask per element id."""

    set_names: tuple
    elements: dict  # id -> mask

    @property
    def n(self) -> int:
        return len(self.set_names)


@dataclass(frozen=True)
class RegionCounts:
    counts: dict  # mask -> nonnegative int


def _check_set_count(n: int, where: str) -> None:
    if n > MAX_SETS:
        raise ValueError(f"{where} defines {n} sets; at most {MAX_SETS} are supported")


def ingest(path, format: Optional[str] = None) -> MembershipData:
    """Read set membership from CSV (`id,<set1>,...` with 0/1 cells) or JSON.

    JSON layout: {"sets": {name: [element ids]}} with an optional
    "elements" list naming ids that may belong to no set at all (they get
    the all-zeros mask).
    """
    path = Path(path)
    if format is None:
        format = "json" if path.suffix.lower() == ".json" else "csv"
    if format == "csv":
        return _ingest_csv(path)
    if format == "json":
        return _ingest_json(path)
    raise ValueError(f"unknown membership format {format!r}")


def _ingest_csv(path: Path) -> MembershipData:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or len(rows[0]) < 2 or rows[0][0] != "id":
        raise ValueError(f"{path}: expected a header row 'id,<set1>,...'")
    set_names = tuple(rows[0][1:])
    _check_set_count(len(set_names), str(path))
    elements: Dict[str, int] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(set_names) + 1:
            raise ValueError(f"{path}:{lineno}: expected {len(set_names) + 1} cells, got {len(row)}")
        eid = row[0]
        if eid in elements:
            raise ValueError(f"{path}:{lineno}: duplicate element id {eid!r}")
        mask = 0
        for i, cell in enumerate(row[1:]):
            if cell not in ("0", "1"):
                raise ValueError(f"{path}:{lineno}: cell for set {set_names[i]!r} must be 0 or 1, got {cell!r}")
            if cell == "1":
                mask |= 1 << i
        elements[eid] = mask
    return MembershipData(set_names=set_names, elements=elements)


def _ingest_json(path: Path) -> MembershipData:
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "sets" not in doc or not isinstance(doc["sets"], dict):
        raise ValueError(f'{path}: expected an object {{"sets": {{name: [ids]}}}}')
    set_names = tuple(doc["sets"].keys())
    _check_set_count(len(set_names), str(path))
    elements: Dict[str, int] = {}
    for eid in doc.get("elements", []):
        if eid in elements:
            raise ValueError(f"{path}: duplicate element id {eid!r}")
        elements[eid] = 0
    for i, (name, ids) in enumerate(doc["sets"].items()):
        for eid in ids:
            elements[eid] = elements.get(eid, 0) | 1 << i
    return MembershipData(set_names=set_names, elements=elements)


def count_regions(data: MembershipData) -> RegionCounts:
    """Histogram of element masks over all 2^n masks (zeros included)."""
    counts = {m: 0 for m in range(2 ** data.n)}
    for mask in data.elements.values():
        counts[mask] += 1
    return RegionCounts(counts=counts)


# ---------------------------------------------------------------------------
# Argument plumbing
# ---------------------------------------------------------------------------

def parse_fraction(text: str) -> float:
    """Float from a decimal or an 'a/b' rational string."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number or fraction: {text!r}") from exc


def _usage_error(message: str) -> "SystemExit":
    print(f"error: {message}", file=sys.stderr)
    return SystemExit(2)


def _spec_from_args(args) -> CurveSpec:
    if getattr(args, "preset", None):
        try:
            return get_preset(args.preset)
        except KeyError as exc:
            raise _usage_error(f"--preset: {exc.args[0]}")
    if args.n is None:
        raise _usage_error("--n is required unless --preset is given")
    if args.decay == "linear":
        decay = Linear()
    elif args.decay == "exp":
        if args.b is None:
            raise _usage_error("--b is required for --decay exp")
        if args.b == 0.5:
            decay = SmithExponential()  # the classical halving baseline
        else:
            try:
                decay = ModifiedExponential(b=args.b, eps=args.eps if args.eps is not None else 1e-3)
            except ValueError as exc:
                raise _usage_error(f"--b/--eps: {exc}")
    elif args.decay == "linear-mod":
        if args.delta is None or args.eps is None:
            raise _usage_error("--delta and --eps are required for --decay linear-mod")
        try:
            decay = ModifiedLinear(delta=args.delta, eps=args.eps)
        except ValueError as exc:
            raise _usage_error(f"--delta/--eps: {exc}")
    else:
        raise _usage_error(f"--decay: unknown scheme {args.decay!r}")
    try:
        return CurveSpec(variant=args.variant, n=args.n, p=args.p, decay=decay)
    except ValueError as exc:
        raise _usage_error(str(exc))


def _add_spec_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--variant", choices=("sine", "cosine"), default="cosine",
                     help="curve family (default: cosine)")
    sub.add_argument("--n", type=int, default=None, help="number of sets (2..9)")
    sub.add_argument("--p", type=parse_fraction, default=0.2,
                     help="shape exponent; decimals and a/b fractions accepted (default: 1/5)")
    sub.add_argument("--decay", choices=("linear", "exp", "linear-mod"), default="linear-mod",
                     help="amplitude decay scheme (default: linear-mod)")
    sub.add_argument("--b", type=parse_fraction, default=None,
                     help="base for --decay exp; 0.5 selects the classical halving baseline")
    sub.add_argument("--eps", type=parse_fraction, default=None,
                     help="decay step parameter (exp and linear-mod)")
    sub.add_argument("--delta", type=parse_fraction, default=None,
                     help="smallest-blade amplitude for --decay linear-mod")
    sub.add_argument("--preset", default=None,
                     help=f"named parameter set, one of: {', '.join(sorted(PRESETS))}")
    sub.add_argument("--resolution", type=int, default=1024,
                     help="raster resolution (default: 1024)")


def _read_set_names(path, n: int) -> List[str]:
    path = Path(path)
    if path.suffix.lower() == ".json":
        names = json.loads(path.read_text())
        if not isinstance(names, list):
            raise ValueError(f"{path}: expected a JSON array of names")
    else:
        names = [line.strip() for line in path.read_text().splitlines() if line.strip()]
    if len(names) != n:
        raise ValueError(f"{path}: expected {n} set names, got {len(names)}")
    return [str(x) for x in names]


def _pipeline(spec: CurveSpec, resolution: int):
    boundaries = sample_all_boundaries(spec)
    grid = rasterize(spec, resolution)
    components = extract_components(grid)
    report = verify(spec, grid, boundaries, tiny_threshold=None)
    return boundaries, grid, components, report


def _write_or_print(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        print(text)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _cmd_generate(args) -> int:
    spec = _spec_from_args(args)
    boundaries, grid, components, report = _pipeline(spec, args.resolution)
    plan = plan_labels(components, spec)

    set_names = None
    if args.labels:
        try:
            set_names = _read_set_names(args.labels, spec.n)
        except ValueError as exc:
            raise _usage_error(f"--labels: {exc}")

    texts = None
    if args.data:
        try:
            data = ingest(args.data)
        except ValueError as exc:
            raise _usage_error(f"--data: {exc}")
        if data.n != spec.n:
            raise _usage_error(
                f"--data: file defines {data.n} sets but the diagram has {spec.n}"
            )
        counts = count_regions(data)
        texts = {m: str(c) for m, c in counts.counts.items()}
        if set_names is None:
            set_names = list(data.set_names)

    result = render_diagram(
        boundaries, components, plan,
        RenderConfig(canvas_px=args.canvas), texts=texts, set_names=set_names,
    )
    Path(args.out).write_text(result.svg)
    if result.warnings:
        Path(str(args.out) + ".warnings.json").write_text(
            json.dumps(list(result.warnings), indent=2) + "\n"
        )
    if args.report:
        Path(args.report).write_text(report.to_json() + "\n")
    return 0


def _cmd_verify(args) -> int:
    spec = _spec_from_args(args)
    _, _, _, report = _pipeline(spec, args.resolution)
    _write_or_print(report.to_json(), args.out)
    return 0 if report.is_independent_family else 1


def _stats_dict(stats) -> dict:
    return {
        "log10AreaMin": round(stats.min, 9),
        "log10AreaMax": round(stats.max, 9),
        "log10AreaMean": round(stats.mean, 9),
        "log10AreaStd": round(stats.std, 9),
        "histCounts": [int(c) for c in stats.hist_counts],
        "histEdges": [round(float(e), 9) for e in stats.hist_edges],
    }


def _cmd_areas(args) -> int:
    if args.against != "edwards":
        raise _usage_error(f"--against: only 'edwards' is supported, got {args.against!r}")
    spec = _spec_from_args(args)
    _, _, _, report = _pipeline(spec, args.resolution)

    diagram = edw.build_cogwheel(spec.n)
    projection = edw.stereographic_project(diagram)
    egrid = rasterize_polylines(projection.curves, args.resolution)
    ereport = verify(None, egrid, projection.curves, tiny_threshold=None)

    try:
        mine = area_stats(report)
        theirs = area_stats(ereport)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    doc = {"fan": _stats_dict(mine), "edwards": _stats_dict(theirs)}
    lines = [
        f"{'':>12}  {'fan':>12}  {'edwards':>12}",
        f"{'min log10':>12}  {mine.min:>12.4f}  {theirs.min:>12.4f}",
        f"{'max log10':>12}  {mine.max:>12.4f}  {theirs.max:>12.4f}",
        f"{'mean log10':>12}  {mine.mean:>12.4f}  {theirs.mean:>12.4f}",
        f"{'std log10':>12}  {mine.std:>12.4f}  {theirs.std:>12.4f}",
        "",
        "histogram (20 log-spaced bins, fan | edwards):",
    ]
    for k in range(len(mine.hist_counts)):
        lines.append(
            f"  [{mine.hist_edges[k]:8.3f}, {mine.hist_edges[k + 1]:8.3f})  "
            f"{int(mine.hist_counts[k]):>4d} | "
            f"[{theirs.hist_edges[k]:8.3f}, {theirs.hist_edges[k + 1]:8.3f})  "
            f"{int(theirs.hist_counts[k]):>4d}"
        )
    print("\n".join(lines))
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 0


def _cmd_edwards(args) -> int:
    if args.n < 3 or args.n > MAX_SETS:
        raise _usage_error(f"--n: cogwheel diagrams need 3..{MAX_SETS} sets, got {args.n}")
    pole = "north" if args.variant == "below" else "south"
    diagram = edw.build_cogwheel(args.n, pole=pole)
    if args.projection == "stereo":
        projection = edw.stereographic_project(diagram)
        curves = list(projection.curves)
        grid = rasterize_polylines(curves, args.resolution)
        components = extract_components(grid)
        result = render_diagram(curves, components, None, RenderConfig(canvas_px=args.canvas))
    else:
        curves = edw.equatorial_project(diagram)
        result = render_diagram(curves, [], None, RenderConfig(canvas_px=args.canvas, extent=1.1))
    Path(args.out).write_text(result.svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vennfan",
        description="Fan-blade n-set Venn diagrams: generation, verification, cogwheel comparison.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="render a diagram to SVG")
    _add_spec_flags(p_gen)
    p_gen.add_argument("--labels", default=None, help="file with set names (one per line, or JSON array)")
    p_gen.add_argument("--data", default=None, help="membership CSV/JSON; regions are labeled with counts")
    p_gen.add_argument("--canvas", type=int, default=1024, help="canvas size in px (default: 1024)")
    p_gen.add_argument("--out", required=True, help="output SVG path")
    p_gen.add_argument("--report", default=None, help="also write the verification report JSON here")
    p_gen.set_defaults(func=_cmd_generate)

    p_ver = sub.add_parser("verify", help="check the region structure, print the report")
    _add_spec_flags(p_ver)
    p_ver.add_argument("--out", default=None, help="write the report here instead of stdout")
    p_ver.set_defaults(func=_cmd_verify)

    p_areas = sub.add_parser("areas", help="compare region-area spread against the cogwheel diagram")
    _add_spec_flags(p_areas)
    p_areas.add_argument("--against", default="edwards", help="comparison target (only: edwards)")
    p_areas.add_argument("--out", default=None, help="write the paired statistics JSON here")
    p_areas.set_defaults(func=_cmd_areas)

    p_edw = sub.add_parser("edwards", help="reconstruct the spherical cogwheel diagram")
    p_edw.add_argument("--n", type=int, required=True, help="number of sets (3..9)")
    p_edw.add_argument("--projection", choices=("stereo", "equatorial"), default="stereo")
    p_edw.add_argument("--variant", choices=("below", "above"), default="below",
                       help="projection plane below (canonical) or above (inside-out, mirrored)")
    p_edw.add_argument("--resolution", type=int, default=1024)
    p_edw.add_argument("--canvas", type=int, default=1024)
    p_edw.add_argument("--out", required=True, help="output SVG path")
    p_edw.set_defaults(func=_cmd_edwards)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
