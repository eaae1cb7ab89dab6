"""Planar geometry: points, rigid transforms, lines, and the oriented
surface treated as a plane for contact-side classification.

All angles are radians. Points are immutable value objects; every function
here is pure, so concurrent use needs no locking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import OriginOnPlane, ParallelLines

TOL_PARALLEL = 1e-9  # on the cross product of unit directions
TOL_ON_SURFACE = 1e-9  # metres


@dataclass(frozen=True)
class Point2:
    """Planar point or vector. Solver stages may carry complex components."""

    x: float
    y: float

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "Point2":
        return Point2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def dot(self, other: "Point2"):
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point2"):
        """z-component of the 3D cross product."""
        return self.x * other.y - self.y * other.x

    def norm(self):
        """Principal square root of x**2 + y**2 (Euclidean for real input)."""
        return (self.x * self.x + self.y * self.y) ** 0.5


def unit_vector(angle: float) -> Point2:
    return Point2(math.cos(angle), math.sin(angle))


@dataclass(frozen=True)
class Transform2H:
    """Rigid planar transform, the rotation-plus-translation form of the
    3x3 homogeneous matrix: apply(p) = R(angle) p + origin."""

    angle: float
    origin: Point2

    def apply(self, p: Point2) -> Point2:
        c, s = math.cos(self.angle), math.sin(self.angle)
        return Point2(c * p.x - s * p.y + self.origin.x,
                      s * p.x + c * p.y + self.origin.y)

    def compose(self, inner: "Transform2H") -> "Transform2H":
        """self applied after inner: apply(compose, p) == apply(self, apply(inner, p))."""
        return Transform2H(self.angle + inner.angle, self.apply(inner.origin))


def make_transform(angle: float, origin: Point2) -> Transform2H:
    return Transform2H(angle, origin)


@dataclass(frozen=True)
class Line2:
    """Line given by a unit direction and its moment about the origin.

    A point p lies on the line iff p.x * direction.y - p.y * direction.x
    equals the moment.
    """

    direction: Point2
    moment: float

    def residual(self, p: Point2):
        return p.x * self.direction.y - p.y * self.direction.x - self.moment


def line_through(point: Point2, angle: float) -> Line2:
    d = unit_vector(angle)
    return Line2(d, point.x * d.y - point.y * d.x)


def intersect_lines(l1: Line2, l2: Line2, tol: float = TOL_PARALLEL) -> Point2:
    """Intersection of two lines as the 2x2 linear solve.

    Raises ParallelLines when the unit directions are parallel within tol.
    """
    d1, d2 = l1.direction, l2.direction
    det = d1.cross(d2)  # equals the determinant of the 2x2 system below
    if abs(det) <= tol:
        raise ParallelLines(f"|cross| = {abs(det):.3e} <= {tol:.1e}")
    # rows: x*dy - y*dx = m
    x = (l1.moment * (-d2.x) - (-d1.x) * l2.moment) / det
    y = (d1.y * l2.moment - l1.moment * d2.y) / det
    return Point2(x, y)


@dataclass(frozen=True)
class PlaneSpec:
    """Oriented surface: unit normal plus offset, f(p) = p . normal + offset."""

    normal: Point2
    offset: float

    def evaluate(self, p: Point2):
        return p.dot(self.normal) + self.offset


def make_plane(angle: float, surface_point: Point2) -> PlaneSpec:
    """Plane through surface_point whose line direction is at `angle`;
    the normal is that direction rotated by -pi/2."""
    n = unit_vector(angle - math.pi / 2)
    return PlaneSpec(n, -surface_point.dot(n))


class Contact(Enum):
    ON_SURFACE = "on_surface"
    NO_CONTACT = "no_contact"
    IN_CONTACT = "in_contact"


def classify_contact(p: Point2, plane: PlaneSpec,
                     tol: float = TOL_ON_SURFACE) -> Contact:
    """Side-of-surface test for the unloaded pose.

    A point on the origin's side of the surface has not reached it
    (NO_CONTACT); the opposite side means the surface constrains it
    (IN_CONTACT). Undefined when the origin lies on the surface itself.
    """
    if abs(plane.offset) <= tol:
        raise OriginOnPlane("plane passes through the origin")
    q = plane.evaluate(p)
    if abs(q) <= tol:
        return Contact.ON_SURFACE
    if (q > 0) == (plane.offset > 0):
        return Contact.NO_CONTACT
    return Contact.IN_CONTACT
