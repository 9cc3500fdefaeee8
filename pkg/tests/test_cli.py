import json

import numpy as np
import pytest

import vennfan.cli as cli


def write(path, text):
    path.write_text(text)
    return str(path)


# ---------------------------------------------------------------------------
# ingest / count_regions
# ---------------------------------------------------------------------------

def test_ingest_csv_two_sets(tmp_path):
    path = write(tmp_path / "m.csv", "id,alpha,beta\na,1,0\nb,1,1\n")
    data = cli.ingest(path)
    assert data.set_names == ("alpha", "beta")
    assert data.elements == {"a": 0b01, "b": 0b11}
    counts = cli.count_regions(data)
    assert counts.counts == {0: 0, 1: 1, 2: 0, 3: 1}


def test_ingest_json_shared_element(tmp_path):
    path = write(tmp_path / "m.json", json.dumps({"sets": {"A": ["x"], "B": ["x"]}}))
    data = cli.ingest(path)
    assert data.elements == {"x": 0b11}


def test_ingest_json_universe_elements_get_zero_mask(tmp_path):
    doc = {"sets": {"A": ["x"], "B": []}, "elements": ["x", "y"]}
    path = write(tmp_path / "m.json", json.dumps(doc))
    data = cli.ingest(path)
    assert data.elements == {"x": 0b01, "y": 0}


def test_ingest_rejects_non_binary_cell(tmp_path):
    path = write(tmp_path / "m.csv", "id,a\nx,2\n")
    with pytest.raises(ValueError, match="0 or 1"):
        cli.ingest(path)


def test_ingest_rejects_duplicate_ids(tmp_path):
    path = write(tmp_path / "m.csv", "id,a\nx,1\nx,0\n")
    with pytest.raises(ValueError, match="duplicate"):
        cli.ingest(path)


def test_ingest_refuses_too_many_sets(tmp_path):
    header = "id," + ",".join(f"s{i}" for i in range(10))
    path = write(tmp_path / "m.csv", header + "\n")
    with pytest.raises(ValueError, match="at most 9"):
        cli.ingest(path)


def test_ingest_requires_header(tmp_path):
    path = write(tmp_path / "m.csv", "name,a\nx,1\n")
    with pytest.raises(ValueError, match="header"):
        cli.ingest(path)


def test_count_regions_empty_and_full():
    data = cli.MembershipData(set_names=("a", "b"), elements={})
    assert sum(cli.count_regions(data).counts.values()) == 0
    data = cli.MembershipData(set_names=("a", "b", "c"), elements={"e": 0b111})
    counts = cli.count_regions(data)
    assert counts.counts[0b111] == 1
    assert sum(counts.counts.values()) == 1


def test_count_regions_conserves_elements():
    rng = np.random.default_rng(11)
    masks = rng.integers(0, 8, 1000)
    data = cli.MembershipData(
        set_names=("a", "b", "c"),
        elements={f"e{k}": int(m) for k, m in enumerate(masks)},
    )
    counts = cli.count_regions(data)
    assert sum(counts.counts.values()) == 1000


# ---------------------------------------------------------------------------
# flag parsing
# ---------------------------------------------------------------------------

def test_parse_fraction_forms():
    assert cli.parse_fraction("1/7") == pytest.approx(1 / 7)
    assert cli.parse_fraction("0.25") == 0.25
    with pytest.raises(Exception):
        cli.parse_fraction("one half")


def test_usage_error_exit_code(tmp_path, capsys):
    # missing --n without preset
    code_or_exc = None
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--decay", "linear"])
    assert exc.value.code == 2


def test_unknown_preset_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--preset", "nope"])
    assert exc.value.code == 2


def test_exp_decay_requires_base():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--variant", "cosine", "--n", "4", "--decay", "exp"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def test_verify_command_reports_and_exits_zero(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = cli.main(
        ["verify", "--preset", "cosine-n3", "--resolution", "256", "--out", str(out)]
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["isIndependentFamily"] is True
    assert len(doc["componentsPerMask"]) == 8


def test_verify_halving_baseline_flag_form(capsys):
    code = cli.main(
        ["verify", "--variant", "cosine", "--n", "4", "--p", "1", "--decay", "exp",
         "--b", "0.5", "--resolution", "512"]
    )
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["isSimple"] is True


def test_generate_writes_svg_and_report(tmp_path):
    svg = tmp_path / "d.svg"
    rep = tmp_path / "d.json"
    code = cli.main(
        ["generate", "--preset", "sine-n3", "--resolution", "256",
         "--out", str(svg), "--report", str(rep)]
    )
    assert code == 0
    assert svg.read_text().startswith("<?xml")
    assert "isVenn" in rep.read_text()


def test_generate_report_matches_verify(tmp_path, capsys):
    svg = tmp_path / "d.svg"
    rep = tmp_path / "d.json"
    flags = ["--preset", "cosine-n4", "--resolution", "256"]
    cli.main(["generate", *flags, "--out", str(svg), "--report", str(rep)])
    capsys.readouterr()
    cli.main(["verify", *flags])
    verified = capsys.readouterr().out
    assert rep.read_text().strip() == verified.strip()


def test_generate_with_membership_data(tmp_path):
    data = tmp_path / "m.csv"
    rows = ["id,a,b,c"] + [f"e{k},{k & 1},{k >> 1 & 1},{k >> 2 & 1}" for k in range(40)]
    data.write_text("\n".join(rows) + "\n")
    svg = tmp_path / "d.svg"
    code = cli.main(
        ["generate", "--preset", "sine-n3", "--resolution", "256",
         "--data", str(data), "--out", str(svg)]
    )
    assert code == 0
    assert ">5<" in svg.read_text()  # each of the 8 masks occurs 5 times


def test_generate_data_set_count_mismatch(tmp_path):
    data = tmp_path / "m.csv"
    data.write_text("id,a,b\nx,1,0\n")
    with pytest.raises(SystemExit) as exc:
        cli.main(
            ["generate", "--preset", "sine-n3", "--resolution", "256",
             "--data", str(data), "--out", str(tmp_path / "d.svg")]
        )
    assert exc.value.code == 2


def test_generate_with_label_file(tmp_path):
    names = tmp_path / "names.txt"
    names.write_text("width\nheight\ndepth\n")
    svg = tmp_path / "d.svg"
    code = cli.main(
        ["generate", "--preset", "cosine-n3", "--resolution", "256",
         "--labels", str(names), "--out", str(svg)]
    )
    assert code == 0
    assert "width" in svg.read_text()


def test_edwards_command_stereo_and_equatorial(tmp_path):
    for projection in ("stereo", "equatorial"):
        out = tmp_path / f"{projection}.svg"
        code = cli.main(
            ["edwards", "--n", "4", "--projection", projection,
             "--resolution", "256", "--out", str(out)]
        )
        assert code == 0
        assert out.read_text().startswith("<?xml")


def test_edwards_rejects_tiny_n():
    with pytest.raises(SystemExit) as exc:
        cli.main(["edwards", "--n", "2", "--out", "x.svg"])
    assert exc.value.code == 2


def test_areas_command(tmp_path, capsys):
    out = tmp_path / "areas.json"
    code = cli.main(
        ["areas", "--preset", "cosine-n4", "--resolution", "512", "--out", str(out)]
    )
    assert code == 0
    text = capsys.readouterr().out
    assert "edwards" in text and "std log10" in text
    doc = json.loads(out.read_text())
    assert set(doc) == {"fan", "edwards"}
    assert len(doc["fan"]["histCounts"]) == 20
