"""Acceptance suite: one test per shipped criterion, each printing a
pass/fail line (run with `pytest -s tests/test_acceptance.py` to see them).
"""

import json
import time

import numpy as np
import pytest

import vennfan as vf
import vennfan.cli as cli

from helpers import (
    annular_sector_cells,
    big_components_per_mask,
    brute_force_visual_center,
    disk_cells,
    sweep_gray_oracle,
)

FULL_RES = 2048
LABEL_RES = 1024


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"\n[acceptance {num}] {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num}: {detail}"


def _pipeline(spec, resolution):
    boundaries = vf.sample_all_boundaries(spec)
    grid = vf.rasterize(spec, resolution)
    return boundaries, grid


def test_criterion_1_preset_completeness_sweep():
    """Every shipped preset is an independent family at resolution 2048."""
    worst = 0.0
    for name, spec in sorted(vf.PRESETS.items()):
        start = time.time()
        boundaries, grid = _pipeline(spec, FULL_RES)
        report = vf.verify(spec, grid, boundaries)
        elapsed = time.time() - start
        worst = max(worst, elapsed)
        assert report.is_independent_family, f"preset {name} is missing masks"
        assert elapsed < 30.0, f"preset {name} took {elapsed:.1f}s"
    _report(1, True, f"{len(vf.PRESETS)} presets complete at {FULL_RES}; max {worst:.1f}s/preset")


def test_criterion_2_unmodified_cosine_is_simple():
    """The p=1 halving-baseline cosine diagrams are simple with one region
    per mask for n = 3..7 (sub-stroke raster strays at crossings aside)."""
    for n in range(3, 8):
        spec = vf.CurveSpec("cosine", n, 1.0, vf.SmithExponential())
        boundaries, grid = _pipeline(spec, FULL_RES)
        report = vf.verify(spec, grid, boundaries)
        big, strays = big_components_per_mask(grid)
        assert all(big[m] == 1 for m in range(2 ** n)), f"n={n}: not one region per mask"
        assert all(s.cell_count <= 2 for s in strays), f"n={n}: non-trivial extra component"
        simple = report.is_simple
        if simple == "unknown":  # localization must settle when doubling
            boundaries, grid = _pipeline(spec, 2 * FULL_RES)
            simple = vf.verify(spec, grid, boundaries).is_simple
        assert simple is True, f"n={n}: is_simple={simple}"
    _report(2, True, "cosine baseline n=3..7: one region per mask, simple")


def test_criterion_3_edwards_census():
    """Stereographic cogwheels yield all 2^n masks with one region each
    under the even-odd classifier at resolution 2048."""
    for n in range(3, 8):
        result = vf.stereographic_project(vf.build_cogwheel(n))
        grid = vf.rasterize_polylines(result.curves, FULL_RES)
        assert grid.census() == set(range(2 ** n)), f"n={n}: incomplete census"
        big, strays = big_components_per_mask(grid)
        assert all(big[m] == 1 for m in range(2 ** n)), f"n={n}: split region"
        assert all(s.cell_count <= 2 for s in strays), f"n={n}: non-trivial stray"
    _report(3, True, "cogwheels n=3..7: complete census, one region per mask")


def test_criterion_4_area_spread_comparison():
    """The flat-decay cosine fan beats the cogwheels on minimum region area
    and on log10-area spread (5% slack on the spread)."""
    details = []
    for n in (6, 7):
        spec = vf.get_preset(f"cosine-n{n}-flat")  # p=1/5, delta=1/3, eps=1/9
        boundaries, grid = _pipeline(spec, FULL_RES)
        fan = vf.area_stats(vf.verify(spec, grid, boundaries))

        result = vf.stereographic_project(vf.build_cogwheel(n))
        egrid = vf.rasterize_polylines(result.curves, FULL_RES)
        edwards = vf.area_stats(vf.verify(None, egrid, result.curves))

        assert fan.min > edwards.min, f"n={n}: fan min {fan.min} <= edwards {edwards.min}"
        assert fan.std < edwards.std * 1.05, f"n={n}: fan std {fan.std} vs {edwards.std}"
        details.append(f"n={n}: min {fan.min:.2f}>{edwards.min:.2f}, std {fan.std:.2f}<{edwards.std:.2f}")
    _report(4, True, "; ".join(details))


def test_criterion_5_gray_code_equivalence():
    """gray_order reproduces the sign-sweep flip sequence for n <= 10, fast."""
    start = time.time()
    for n in range(1, 11):
        assert list(vf.gray_order(n).sequence) == sweep_gray_oracle(n), f"n={n}"
    elapsed = time.time() - start
    assert elapsed < 1.0, f"sweep took {elapsed:.2f}s"
    _report(5, True, f"n=1..10 sweep matches in {elapsed:.2f}s")


def test_criterion_6_visual_center_oracle():
    """The distance-transform visual center lands on the exact brute-force
    cell for five synthetic 96x96 fixtures."""
    size = 96
    fixtures = {}
    fixtures["disk"] = disk_cells(30, size)
    rect = np.zeros((size, size), dtype=bool)
    rect[30:66, 12:84] = True
    fixtures["rectangle"] = rect
    l_shape = np.zeros((size, size), dtype=bool)
    l_shape[10:86, 10:30] = True
    l_shape[66:86, 10:86] = True
    fixtures["l_shape"] = l_shape
    c_shape = np.zeros((size, size), dtype=bool)
    c_shape[10:86, 10:34] = True
    c_shape[10:30, 10:86] = True
    c_shape[66:86, 10:86] = True
    fixtures["c_shape"] = c_shape
    fixtures["annular_sector"] = annular_sector_cells(size)

    for name, cells in fixtures.items():
        comp = vf.component_from_cells(cells)
        point, clearance = vf.visual_center(comp)
        (row, col), dist = brute_force_visual_center(cells)
        assert point == comp.cell_center_world(row, col), f"{name}: wrong cell"
        assert clearance == pytest.approx(dist, abs=1e-9), f"{name}: wrong clearance"
    _report(6, True, f"{len(fixtures)} fixtures match brute force exactly")


def test_criterion_7_label_plan_geometry():
    """Per preset: segment chords sampled at one-cell steps stay inside
    their region; radial anchors sit at radius 1.06 (1e-6)."""
    segment_total = radial_total = 0
    for name, spec in sorted(vf.PRESETS.items()):
        grid = vf.rasterize(spec, LABEL_RES)
        components = vf.extract_components(grid)
        plan = vf.plan_labels(components, spec)
        primary = {}
        for c in components:
            if c.mask not in primary or c.cell_count > primary[c.mask].cell_count:
                primary[c.mask] = c
        for mask, entry in plan.entries.items():
            if entry.strategy == "segment":
                comp = primary[mask]
                phi = np.radians(entry.rotation)
                direction = np.array([np.cos(phi), np.sin(phi)])
                anchor = np.array(entry.anchor)
                steps = int(np.ceil(entry.max_chord / grid.cell_size))
                for t in np.linspace(-0.5, 0.5, max(steps, 2) + 1):
                    pt = anchor + t * entry.max_chord * direction
                    assert comp.contains_point(pt), f"{name} mask {mask}: chord exits region"
                segment_total += 1
            else:
                radius = float(np.hypot(*entry.anchor))
                assert abs(radius - 1.06) < 1e-6, f"{name} mask {mask}: radius {radius}"
                radial_total += 1
    _report(7, True, f"{segment_total} segment chords inside, {radial_total} radial anchors at 1.06")


def test_criterion_8_topology_preserved_by_projection():
    """Strip-domain and disc-domain classifiers agree on the mask census
    for every shipped preset."""
    for name, spec in sorted(vf.PRESETS.items()):
        disc = vf.rasterize(spec, LABEL_RES).census()
        strip = set(int(m) for m in np.unique(vf.rasterize_strip(spec, LABEL_RES)))
        assert disc == strip, f"preset {name}: censuses differ"
    _report(8, True, f"censuses identical for {len(vf.PRESETS)} presets")


def test_criterion_9_command_determinism(tmp_path):
    """Identical flags produce byte-identical SVG and JSON outputs."""
    runs = {}
    for tag in ("a", "b"):
        d = tmp_path / tag
        d.mkdir()
        cli.main([
            "generate", "--preset", "cosine-n4", "--resolution", "512",
            "--out", str(d / "gen.svg"), "--report", str(d / "gen.json"),
        ])
        cli.main([
            "verify", "--preset", "sine-n3", "--resolution", "512",
            "--out", str(d / "verify.json"),
        ])
        cli.main([
            "edwards", "--n", "4", "--resolution", "512", "--out", str(d / "ed.svg"),
        ])
        cli.main([
            "areas", "--preset", "cosine-n4", "--resolution", "512",
            "--out", str(d / "areas.json"),
        ])
        runs[tag] = {
            p.name: p.read_bytes() for p in sorted(d.iterdir())
        }
    assert set(runs["a"]) == set(runs["b"]) == {
        "gen.svg", "gen.json", "verify.json", "ed.svg", "areas.json",
    }
    for name in runs["a"]:
        assert runs["a"][name] == runs["b"][name], f"{name} differs between runs"
    _report(9, True, "generate/verify/edwards/areas byte-identical across runs")


def test_criterion_10_ingestion_conservation(tmp_path):
    """Randomized membership files: counts sum to the element count and
    every element's mask matches its row."""
    rng = np.random.default_rng(2024)
    trials = 100
    for trial in range(trials):
        n = int(rng.integers(2, 7))
        masks = rng.integers(0, 2 ** n, size=1000)
        names = [f"s{i}" for i in range(n)]
        rows = ["id," + ",".join(names)]
        for k, mask in enumerate(masks):
            bits = ",".join(str(mask >> i & 1) for i in range(n))
            rows.append(f"e{k},{bits}")
        path = tmp_path / f"t{trial}.csv"
        path.write_text("\n".join(rows) + "\n")

        data = cli.ingest(path)
        assert data.n == n
        for k, mask in enumerate(masks):
            assert data.elements[f"e{k}"] == int(mask)
        counts = cli.count_regions(data)
        assert sum(counts.counts.values()) == 1000
        expected = np.bincount(masks, minlength=2 ** n)
        assert all(counts.counts[m] == expected[m] for m in range(2 ** n))
    _report(10, True, f"{trials} random files conserve counts and masks")
