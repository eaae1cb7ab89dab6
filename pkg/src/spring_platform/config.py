"""Run configuration: the JSON schema boundary.

Angles enter in degrees and are converted to radians exactly once, here.
The file schema is strict: the full given-quantity list is required and
unknown keys are rejected.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError, UnsupportedFreeLengthPattern, ValidationError
from .geometry import Point2
from .mechanism import MechanismParams

CASE_AUTO = "auto"
CASE_ZERO = "zero-free-lengths"
CASE_ONE = "one-nonzero"
CASES = (CASE_AUTO, CASE_ZERO, CASE_ONE)
FORMATS = ("json", "csv", "svg")

REQUIRED_KEYS = ("P_M", "alpha_deg", "P_A1_in1", "P_A2_in2", "P_P_in2",
                 "P_O1", "phi1_deg", "k", "L0")
OPTIONAL_KEYS = ("case", "output_dir", "formats", "tolerances",
                 "free_pose_branch")


@dataclass(frozen=True)
class RunConfig:
    params: MechanismParams
    case: str = CASE_AUTO
    output_dir: str = "out"
    formats: tuple[str, ...] = FORMATS
    accept_tol: float | None = None
    free_pose_branch: int | None = None

    def to_dict(self) -> dict:
        p = self.params
        data = {
            "P_M": [p.surface_point.x, p.surface_point.y],
            "alpha_deg": math.degrees(p.surface_angle),
            "P_A1_in1": [p.a1_in_base.x, p.a1_in_base.y],
            "P_A2_in2": [p.a2_in_top.x, p.a2_in_top.y],
            "P_P_in2": [p.p_in_top.x, p.p_in_top.y],
            "P_O1": [p.base_origin.x, p.base_origin.y],
            "phi1_deg": math.degrees(p.base_angle),
            "k": list(p.stiffness),
            "L0": list(p.free_lengths),
            "case": self.case,
            "output_dir": self.output_dir,
            "formats": list(self.formats),
        }
        if self.accept_tol is not None:
            data["tolerances"] = {"accept": self.accept_tol}
        if self.free_pose_branch is not None:
            data["free_pose_branch"] = self.free_pose_branch
        return data


def free_length_case(free_lengths) -> str | None:
    """Solver case implied by the free-length pattern, or None."""
    l01, l02, l03 = free_lengths
    if l01 == 0 and l02 == 0 and l03 == 0:
        return CASE_ZERO
    if l01 > 0 and l02 == 0 and l03 == 0:
        return CASE_ONE
    return None


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _point(data, key) -> Point2:
    value = data[key]
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(_is_number(v) for v in value)):
        raise ValidationError(key, "expected a pair of numbers")
    return Point2(float(value[0]), float(value[1]))


def _triple(data, key) -> tuple[float, float, float]:
    value = data[key]
    if (not isinstance(value, (list, tuple)) or len(value) != 3
            or not all(_is_number(v) for v in value)):
        raise ValidationError(key, "expected three numbers")
    return (float(value[0]), float(value[1]), float(value[2]))


def _number(data, key) -> float:
    value = data[key]
    if not _is_number(value):
        raise ValidationError(key, "expected a number")
    return float(value)


def config_from_dict(data: dict) -> RunConfig:
    unknown = set(data) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS)
    if unknown:
        raise ValidationError(sorted(unknown)[0], "unknown key")
    missing = [k for k in REQUIRED_KEYS if k not in data]
    if missing:
        raise ValidationError(missing[0], "required key missing")

    try:
        params = MechanismParams(
            surface_point=_point(data, "P_M"),
            surface_angle=math.radians(_number(data, "alpha_deg")),
            a1_in_base=_point(data, "P_A1_in1"),
            a2_in_top=_point(data, "P_A2_in2"),
            p_in_top=_point(data, "P_P_in2"),
            base_origin=_point(data, "P_O1"),
            base_angle=math.radians(_number(data, "phi1_deg")),
            stiffness=_triple(data, "k"),
            free_lengths=_triple(data, "L0"),
        )
    except ValueError as exc:
        raise ValidationError("params", str(exc)) from exc

    case = data.get("case", CASE_AUTO)
    if case not in CASES:
        raise ValidationError("case", f"must be one of {CASES}")
    implied = free_length_case(params.free_lengths)
    if case == CASE_AUTO:
        if implied is None:
            raise UnsupportedFreeLengthPattern()
        case = implied
    elif implied != case:
        raise ValidationError(
            "case", f"free lengths {params.free_lengths} do not match "
                    f"requested case {case!r}")

    formats = data.get("formats", list(FORMATS))
    if (not isinstance(formats, (list, tuple))
            or not set(formats) <= set(FORMATS) or not formats):
        raise ValidationError("formats", f"must be a nonempty subset of {FORMATS}")

    accept_tol = None
    tolerances = data.get("tolerances", {})
    if tolerances:
        if not isinstance(tolerances, dict) or set(tolerances) - {"accept"}:
            raise ValidationError("tolerances", "only 'accept' is supported")
        accept_tol = float(tolerances["accept"])
        if not accept_tol > 0:
            raise ValidationError("tolerances", "accept must be positive")

    branch = data.get("free_pose_branch")
    if branch is not None and (isinstance(branch, bool)
                               or not isinstance(branch, int) or branch < 0):
        raise ValidationError("free_pose_branch", "must be a nonnegative index")

    output_dir = data.get("output_dir", "out")
    if not isinstance(output_dir, str):
        raise ValidationError("output_dir", "must be a string")

    return RunConfig(params=params, case=case, output_dir=output_dir,
                     formats=tuple(formats), accept_tol=accept_tol,
                     free_pose_branch=branch)


def load_config(path) -> RunConfig:
    """Read and validate a run configuration file (JSON)."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    return config_from_dict(data)


def dump_config(config: RunConfig, path) -> None:
    Path(path).write_text(json.dumps(config.to_dict(), indent=2,
                                     sort_keys=True) + "\n")
