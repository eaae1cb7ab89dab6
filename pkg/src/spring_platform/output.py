"""Report emission: CSV and JSON tables plus SVG configuration drawings.

Output is deterministic: re-running the same configuration produces
byte-identical files (the in-memory timing is deliberately left out of
the JSON report).
"""

from __future__ import annotations

import json
import math
import xml.etree.ElementTree as ET
from pathlib import Path

from .analysis import AnalysisReport
from .geometry import Point2, make_plane, unit_vector
from .mechanism import MechanismParams, pose_from
from .solutions import EquilibriumSolution

CSV_HEADER = ("index,beta_re,beta_im,L_re,L_im,residual_force,"
              "residual_moment,real_flag,accepted_flag")

SPRING_COLORS = ("#b22222", "#2e8b57", "#6a5acd")
SOLUTION_COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _fmt_resid(value: float) -> str:
    return f"{value:.6e}"


def solution_rows(solutions: list[EquilibriumSolution]) -> list[str]:
    rows = []
    for i, s in enumerate(solutions, start=1):
        rows.append(",".join([
            str(i),
            _fmt(s.beta.real), _fmt(s.beta.imag),
            _fmt(s.length.real), _fmt(s.length.imag),
            _fmt_resid(s.residual_force), _fmt_resid(s.residual_moment),
            str(int(s.is_real)), str(int(s.accepted)),
        ]))
    return rows


def report_to_dict(report: AnalysisReport) -> dict:
    """JSON-ready view of the report (timing excluded for determinism)."""
    sols = []
    for i, s in enumerate(report.solutions, start=1):
        sols.append({
            "index": i,
            "beta_re": s.beta.real, "beta_im": s.beta.imag,
            "L_re": s.length.real, "L_im": s.length.imag,
            "residual_force": s.residual_force,
            "residual_moment": s.residual_moment,
            "rel_residual": s.rel_residual,
            "squared_residual": s.squared_residual,
            "real": s.is_real,
            "accepted": s.accepted,
            "note": s.note,
        })
    e = report.point_e
    return {
        "contact": report.contact,
        "case": report.case,
        "point_E": None if e is None else [e.x, e.y],
        "free_pose": report.free_pose,
        "counts": report.counts,
        "margin": report.margin,
        "solutions": sols,
        "notes": report.notes,
        "params": report.config.to_dict(),
    }


def _sanitize(obj):
    """Replace non-finite floats so the JSON stays valid and stable."""
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def emit_tables(report: AnalysisReport, out_dir,
                formats=("json", "csv")) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if "csv" in formats:
        path = out / "solutions.csv"
        lines = [CSV_HEADER] + solution_rows(report.solutions)
        path.write_text("\n".join(lines) + "\n")
        written.append(path)
    if "json" in formats:
        path = out / "report.json"
        payload = _sanitize(report_to_dict(report))
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        written.append(path)
    return written


# --- SVG rendering -------------------------------------------------------

def _mechanism_points(params: MechanismParams, solution: EquilibriumSolution,
                      e: Point2):
    pose = pose_from(solution.length.real, solution.beta.real, params, e)
    return {
        "O1": params.base_origin,
        "A1": params.a1_fixed,
        "O2": Point2(pose.o2.x, pose.o2.y),
        "A2": Point2(pose.a2.x, pose.a2.y),
        "P": Point2(pose.p.x, pose.p.y),
    }


def _spring_polyline(p_from: Point2, p_to: Point2, coils: int = 6,
                     width_ratio: float = 0.08) -> str:
    """Zigzag polyline between two points with straight lead-in segments."""
    dx, dy = p_to.x - p_from.x, p_to.y - p_from.y
    length = math.hypot(dx, dy)
    if length == 0:
        return f"{p_from.x},{p_from.y}"
    ux, uy = dx / length, dy / length
    nx, ny = -uy, ux
    amp = width_ratio * length
    pts = [(p_from.x, p_from.y)]
    lead = 0.15
    pts.append((p_from.x + lead * dx, p_from.y + lead * dy))
    for i in range(coils):
        t = lead + (1 - 2 * lead) * (i + 0.5) / coils
        side = 1.0 if i % 2 == 0 else -1.0
        pts.append((p_from.x + t * dx + side * amp * nx,
                    p_from.y + t * dy + side * amp * ny))
    pts.append((p_from.x + (1 - lead) * dx, p_from.y + (1 - lead) * dy))
    pts.append((p_to.x, p_to.y))
    return " ".join(f"{x:.4f},{y:.4f}" for x, y in pts)


class _Canvas:
    """World-to-SVG mapping with a flipped y axis."""

    def __init__(self, points: list[Point2], pad: float = 1.5):
        xs = [p.x for p in points]
        ys = [p.y for p in points]
        self.x0, self.x1 = min(xs) - pad, max(xs) + pad
        self.y0, self.y1 = min(ys) - pad, max(ys) + pad
        self.scale = 640.0 / max(self.x1 - self.x0, 1e-9)
        self.height = (self.y1 - self.y0) * self.scale

    def map(self, p: Point2) -> tuple[float, float]:
        return ((p.x - self.x0) * self.scale,
                (self.y1 - p.y) * self.scale)

    def root(self) -> ET.Element:
        width = (self.x1 - self.x0) * self.scale
        return ET.Element("svg", {
            "xmlns": "http://www.w3.org/2000/svg",
            "viewBox": f"0 0 {width:.1f} {self.height:.1f}",
            "width": f"{width:.0f}", "height": f"{self.height:.0f}",
        })


def _draw_line(parent, canvas, p1, p2, stroke, width="2", dash=None):
    x1, y1 = canvas.map(p1)
    x2, y2 = canvas.map(p2)
    attrs = {"x1": f"{x1:.2f}", "y1": f"{y1:.2f}", "x2": f"{x2:.2f}",
             "y2": f"{y2:.2f}", "stroke": stroke, "stroke-width": width}
    if dash:
        attrs["stroke-dasharray"] = dash
    ET.SubElement(parent, "line", attrs)


def _draw_polyline(parent, canvas, world_points_str, stroke):
    pts = []
    for pair in world_points_str.split():
        x, y = map(float, pair.split(","))
        sx, sy = canvas.map(Point2(x, y))
        pts.append(f"{sx:.2f},{sy:.2f}")
    ET.SubElement(parent, "polyline", {
        "points": " ".join(pts), "fill": "none", "stroke": stroke,
        "stroke-width": "1.5"})


def _draw_label(parent, canvas, p, text, color="#000000"):
    x, y = canvas.map(p)
    el = ET.SubElement(parent, "text", {
        "x": f"{x + 6:.2f}", "y": f"{y - 6:.2f}", "font-size": "13",
        "fill": color, "font-family": "sans-serif"})
    el.text = text


def _draw_point(parent, canvas, p, color="#000000", radius="3.5"):
    x, y = canvas.map(p)
    ET.SubElement(parent, "circle", {
        "cx": f"{x:.2f}", "cy": f"{y:.2f}", "r": radius, "fill": color})


def _surface_segment(params: MechanismParams, canvas_pts: list[Point2]):
    m = params.surface_point
    d = unit_vector(params.surface_angle)
    span = max((max(p.x for p in canvas_pts) - min(p.x for p in canvas_pts)),
               (max(p.y for p in canvas_pts) - min(p.y for p in canvas_pts)),
               5.0) * 1.2
    return m - span * d, m + span * d


def _draw_solution(parent, canvas, params, pts, color="#1f77b4",
                   label_points=True):
    o1, a1 = pts["O1"], pts["A1"]
    o2, a2, p = pts["O2"], pts["A2"], pts["P"]
    _draw_line(parent, canvas, o1, a1, "#333333", "4")
    # top platform triangle
    _draw_line(parent, canvas, o2, a2, color, "3")
    _draw_line(parent, canvas, o2, p, color, "3")
    _draw_line(parent, canvas, a2, p, color, "3")
    for (s_from, s_to), scolor in zip(((o1, o2), (o1, a2), (a1, a2)),
                                      SPRING_COLORS):
        _draw_polyline(parent, canvas, _spring_polyline(s_from, s_to), scolor)
    for name, point in pts.items():
        _draw_point(parent, canvas, point, color="#000000")
        if label_points:
            _draw_label(parent, canvas, point, name)


def render_svg(report: AnalysisReport, out_dir) -> list[Path]:
    """One drawing per real accepted solution plus an overview that
    overlays them, grouped by which side of the surface holds the top
    platform origin."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    params = report.config.params
    e = report.point_e
    written: list[Path] = []
    real_accepted = [(i, s) for i, s in enumerate(report.solutions, start=1)
                     if s.accepted and s.is_real]
    if e is None:
        # no contact solve ran; nothing but an empty overview to draw
        canvas = _Canvas([params.base_origin, params.a1_fixed,
                          params.surface_point])
        root = canvas.root()
        s0, s1 = _surface_segment(params, [params.base_origin,
                                           params.surface_point])
        _draw_line(root, canvas, s0, s1, "#000000", "5")
        path = out / "overview.svg"
        ET.ElementTree(root).write(path, xml_declaration=True,
                                   encoding="unicode")
        return [path]

    solution_points = {i: _mechanism_points(params, s, e)
                       for i, s in real_accepted}
    world = [params.base_origin, params.a1_fixed, params.surface_point, e]
    for pts in solution_points.values():
        world.extend(pts.values())

    plane = make_plane(params.surface_angle, params.surface_point)

    for idx, sol in real_accepted:
        pts = solution_points[idx]
        canvas = _Canvas(list(pts.values())
                         + [params.base_origin, params.a1_fixed, e,
                            params.surface_point])
        root = canvas.root()
        s0, s1 = _surface_segment(params, list(pts.values()))
        _draw_line(root, canvas, s0, s1, "#000000", "5")
        _draw_point(root, canvas, e, "#555555")
        _draw_label(root, canvas, e, "E", "#555555")
        _draw_solution(root, canvas, params, pts)
        title = ET.SubElement(root, "title")
        title.text = (f"solution {idx}: beta={sol.beta.real:.4f}, "
                      f"L={sol.length.real:.4f}")
        path = out / f"solution_{idx}.svg"
        ET.ElementTree(root).write(path, xml_declaration=True,
                                   encoding="unicode")
        written.append(path)

    canvas = _Canvas(world)
    root = canvas.root()
    s0, s1 = _surface_segment(params, world)
    _draw_line(root, canvas, s0, s1, "#000000", "5")
    _draw_point(root, canvas, e, "#555555")
    _draw_label(root, canvas, e, "E", "#555555")
    sides = {"positive": [], "negative": []}
    for k, (idx, sol) in enumerate(real_accepted):
        pts = solution_points[idx]
        side = "positive" if plane.evaluate(pts["O2"]) > 0 else "negative"
        sides[side].append((idx, pts, SOLUTION_COLORS[k % len(SOLUTION_COLORS)]))
    for side, members in sides.items():
        group = ET.SubElement(root, "g", {
            "id": f"side_{side}", "data-solutions": str(len(members))})
        for idx, pts, color in members:
            sub = ET.SubElement(group, "g",
                                {"id": f"solution_{idx}", "class": "solution"})
            _draw_solution(sub, canvas, params, pts, color=color,
                           label_points=False)
    path = out / "overview.svg"
    ET.ElementTree(root).write(path, xml_declaration=True, encoding="unicode")
    written.append(path)
    return written
