import json
import xml.etree.ElementTree as ET

from _support import REFERENCE_CONFIG

from spring_platform import (config_from_dict, emit_tables, render_svg,
                             report_to_dict, run_analysis)
from spring_platform.output import CSV_HEADER


def _report(l0=(0.0, 0.0, 0.0)):
    return run_analysis(config_from_dict(dict(REFERENCE_CONFIG, L0=list(l0))))


def test_csv_rows_and_columns(tmp_path):
    report = _report()
    files = emit_tables(report, tmp_path, ("csv",))
    text = files[0].read_text().strip().splitlines()
    assert text[0] == CSV_HEADER
    assert len(text) == 1 + 4
    row = text[1].split(",")
    assert len(row) == 9
    float(row[1])  # beta_re parses
    assert row[7] in ("0", "1") and row[8] in ("0", "1")


def test_csv_one_nonzero_rows(tmp_path):
    report = _report((1.0, 0.0, 0.0))
    files = emit_tables(report, tmp_path, ("csv",))
    lines = files[0].read_text().strip().splitlines()
    assert len(lines) == 1 + 48
    accepted = sum(1 for line in lines[1:] if line.split(",")[8] == "1")
    assert accepted == report.counts["accepted"]


def test_empty_solve_gives_header_only(tmp_path):
    import math
    from spring_platform import Point2, RunConfig
    from spring_platform.mechanism import MechanismParams
    params = MechanismParams(
        surface_point=Point2(100.0, 0.0), surface_angle=math.radians(90.0),
        a1_in_base=Point2(2.0, 0.0), a2_in_top=Point2(1.0, 0.0),
        p_in_top=Point2(1.0, 1.0), base_origin=Point2(1.0, 0.5),
        base_angle=0.2, stiffness=(1.0, 1.0, 1.0),
        free_lengths=(1.2, 2.0, 2.2))
    report = run_analysis(RunConfig(params=params))
    files = emit_tables(report, tmp_path, ("csv",))
    assert files[0].read_text().strip() == CSV_HEADER


def test_json_structure(tmp_path):
    report = _report()
    files = emit_tables(report, tmp_path, ("json",))
    data = json.loads(files[0].read_text())
    assert data["case"] == "zero-free-lengths"
    assert data["counts"]["total"] == 4
    assert len(data["solutions"]) == 4
    assert data["point_E"] is not None
    assert "timing" not in data  # deterministic output carries no timing
    assert data["params"]["k"] == [1.5, 1.85, 1.45]


def test_json_deterministic(tmp_path):
    a = emit_tables(_report(), tmp_path / "a", ("json", "csv"))
    b = emit_tables(_report(), tmp_path / "b", ("json", "csv"))
    for fa, fb in zip(a, b):
        assert fa.read_bytes() == fb.read_bytes()


def test_report_dict_counts_match():
    report = _report((1.0, 0.0, 0.0))
    data = report_to_dict(report)
    assert data["counts"]["accepted"] == \
        sum(1 for s in data["solutions"] if s["accepted"])


def test_svg_zero_case(tmp_path):
    report = _report()
    files = render_svg(report, tmp_path)
    names = sorted(f.name for f in files)
    assert "overview.svg" in names
    solution_files = [n for n in names if n.startswith("solution_")]
    assert len(solution_files) == 2  # one per real accepted solution
    for f in files:
        ET.parse(f)  # well-formed XML


def test_svg_one_nonzero_case(tmp_path):
    report = _report((1.0, 0.0, 0.0))
    files = render_svg(report, tmp_path)
    solution_files = [f for f in files if f.name.startswith("solution_")]
    assert len(solution_files) == report.counts["real"]
    overview = next(f for f in files if f.name == "overview.svg")
    tree = ET.parse(overview)
    ns = {"svg": "http://www.w3.org/2000/svg"}
    groups = {g.get("id"): int(g.get("data-solutions"))
              for g in tree.getroot().findall("svg:g", ns)
              if g.get("id", "").startswith("side_")}
    assert set(groups) == {"side_positive", "side_negative"}
    assert sum(groups.values()) == report.counts["real"]


def test_svg_contains_mechanism_elements(tmp_path):
    report = _report()
    files = render_svg(report, tmp_path)
    solution = next(f for f in files if f.name.startswith("solution_"))
    root = ET.parse(solution).getroot()
    ns = {"svg": "http://www.w3.org/2000/svg"}
    polylines = root.findall(".//svg:polyline", ns)
    assert len(polylines) == 3  # three springs
    labels = {t.text for t in root.findall(".//svg:text", ns)}
    assert {"O1", "A1", "O2", "A2", "P", "E"} <= labels
