"""Mechanism parameters, the contact-constrained pose, spring state, and
the two equilibrium residuals (force projection along the surface and
moment about the contact pin).

Every evaluation here is defined over complex numbers so that candidate
roots coming out of the elimination stage can be verified by direct
substitution; real inputs produce real values throughout. Spring lengths
for complex poses use the principal square root of the squared-distance
expression.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Optional

from .errors import ZeroLengthSpring
from .geometry import Line2, Point2, intersect_lines, line_through, unit_vector

TOL_ZERO_LENGTH = 1e-12  # metres; below this a spring direction is undefined


def _cos_sin(angle):
    if isinstance(angle, complex):
        return cmath.cos(angle), cmath.sin(angle)
    return math.cos(angle), math.sin(angle)


def _sqrt(value):
    if isinstance(value, complex):
        return cmath.sqrt(value)
    return math.sqrt(value)


@dataclass(frozen=True)
class MechanismParams:
    """All given quantities of the mechanism.

    Anchor points a1/a2 are given in their own platform frames and must lie
    on the frame X axes; p_in_top locates the contact pin in the top frame.
    Angles in radians, lengths in metres, stiffness in N/m.
    """

    surface_point: Point2         # point M on the surface line
    surface_angle: float          # direction of the surface line
    a1_in_base: Point2            # anchor A1 in the base frame
    a2_in_top: Point2             # anchor A2 in the top frame
    p_in_top: Point2              # pin P in the top frame
    base_origin: Point2           # O1 in the fixed frame
    base_angle: float             # base frame orientation
    stiffness: tuple[float, float, float]
    free_lengths: tuple[float, float, float]

    def __post_init__(self):
        for i, k in enumerate(self.stiffness, start=1):
            if not (k > 0 and math.isfinite(k)):
                raise ValueError(f"k{i} must be positive and finite, got {k}")
        for i, l0 in enumerate(self.free_lengths, start=1):
            if not (l0 >= 0 and math.isfinite(l0)):
                raise ValueError(f"L0{i} must be nonnegative, got {l0}")
        if abs(self.a1_in_base.y) > 0 or abs(self.a2_in_top.y) > 0:
            raise ValueError("anchor points must lie on their frame X axes")
        if not self.a1_in_base.x > 0:
            raise ValueError("distance O1-A1 must be positive")
        if not self.a2_in_top.x > 0:
            raise ValueError("distance O2-A2 must be positive")

    @property
    def d_o1a1(self) -> float:
        return self.a1_in_base.x

    @property
    def d_o2a2(self) -> float:
        return self.a2_in_top.x

    @property
    def a1_fixed(self) -> Point2:
        """Anchor A1 in the fixed frame via the base pose."""
        return self.base_origin + self.d_o1a1 * unit_vector(self.base_angle)

    def with_zero_free_lengths(self) -> "MechanismParams":
        return replace(self, free_lengths=(0.0, 0.0, 0.0))

    def base_axis_line(self) -> Line2:
        return line_through(self.base_origin, self.base_angle)

    def surface_line(self) -> Line2:
        return line_through(self.surface_point, self.surface_angle)


def point_e(params: MechanismParams) -> Point2:
    """Intersection of the base-frame X axis with the surface line."""
    return intersect_lines(params.base_axis_line(), params.surface_line())


@dataclass(frozen=True)
class ContactPose:
    """Top-platform pose parametrized by the surface coordinate L and the
    tilt beta; carries the derived fixed-frame points. Components may be
    complex during root verification."""

    length: complex
    cos_beta: complex
    sin_beta: complex
    point_e: Point2
    p: Point2
    o2: Point2
    a2: Point2
    beta: Optional[complex] = None
    phi2: Optional[complex] = None


def pose_from_trig(length, cos_beta, sin_beta, params: MechanismParams,
                   e: Point2) -> ContactPose:
    """Pose from L and the cosine/sine of beta (complex allowed)."""
    ca, sa = math.cos(params.surface_angle), math.sin(params.surface_angle)
    # rotation by (surface_angle + beta)
    cab = ca * cos_beta - sa * sin_beta
    sab = sa * cos_beta + ca * sin_beta
    p = Point2(e.x + length * ca, e.y + length * sa)
    px2, py2 = params.p_in_top.x, params.p_in_top.y
    o2 = Point2(p.x + cab * px2 - sab * py2,
                p.y + sab * px2 + cab * py2)
    # the top X axis points along phi2 = surface_angle + beta + pi
    d2 = params.d_o2a2
    a2 = Point2(o2.x - d2 * cab, o2.y - d2 * sab)
    return ContactPose(length, cos_beta, sin_beta, e, p, o2, a2)


def pose_from(length, beta, params: MechanismParams, e: Point2) -> ContactPose:
    """Pose from the (L, beta) parametrization (complex allowed)."""
    cb, sb = _cos_sin(beta)
    pose = pose_from_trig(length, cb, sb, params, e)
    return replace(pose, beta=beta,
                   phi2=params.surface_angle + beta + math.pi)


@dataclass(frozen=True)
class SpringState:
    """Lengths, unit directions and signed force magnitudes of the three
    springs (O1-O2, O1-A2, A1-A2)."""

    lengths: tuple
    directions: tuple[Point2, Point2, Point2]
    forces: tuple


def _spring_segments(pose: ContactPose, params: MechanismParams):
    o1 = params.base_origin
    a1 = params.a1_fixed
    return ((o1, pose.o2), (o1, pose.a2), (a1, pose.a2))


def spring_state(pose: ContactPose, params: MechanismParams) -> SpringState:
    lengths = []
    directions = []
    forces = []
    for i, (anchor, end) in enumerate(_spring_segments(pose, params)):
        d = end - anchor
        length = _sqrt(d.x * d.x + d.y * d.y)
        if abs(length) < TOL_ZERO_LENGTH:
            raise ZeroLengthSpring(f"spring {i + 1} has length {abs(length):.2e}")
        lengths.append(length)
        directions.append(Point2(d.x / length, d.y / length))
        forces.append(params.stiffness[i] * (length - params.free_lengths[i]))
    return SpringState(tuple(lengths), tuple(directions), tuple(forces))


def force_projection_residual(pose: ContactPose, params: MechanismParams):
    """Net spring force projected on the surface direction; zero at
    equilibrium."""
    state = spring_state(pose, params)
    u = unit_vector(params.surface_angle)
    total = 0.0
    for f, s in zip(state.forces, state.directions):
        total = total + f * s.dot(u)
    return total


def moment_residual(pose: ContactPose, params: MechanismParams):
    """Moment of the three spring forces about the contact pin P (the force
    line through each spring makes the anchor-side form equivalent to the
    attachment-side form); zero at equilibrium."""
    state = spring_state(pose, params)
    anchors = (params.base_origin, params.base_origin, params.a1_fixed)
    total = 0.0
    for anchor, f, s in zip(anchors, state.forces, state.directions):
        r = anchor - pose.p
        total = total + r.cross(f * s)
    return total


def residual_pair(pose: ContactPose, params: MechanismParams):
    """Both equilibrium residuals from one spring evaluation."""
    return force_projection_residual(pose, params), moment_residual(pose, params)
