"""Centered, axis-aligned ellipse primitives: parameterization, tangency, intersection.

Every conic in this library is an ellipse centered at the origin with axes
parallel to the coordinate axes.  Lines are stored in normalized homogeneous
form ``l*x + m*y + n = 0`` with ``l**2 + m**2 = 1``, which makes the tangency
residual ``|a**2 l**2 + b**2 m**2 - n**2|`` scale-free and lines comparable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PointInsideConic

# Points with boundary residual in (-TOLERANCE_INSIDE, TOLERANCE_INSIDE) are
# treated as lying on the conic; below that, strictly inside.
TOLERANCE_INSIDE = 1e-12
# Relative threshold under which a line/conic discriminant collapses to a
# double root (tangency).
DISCRIMINANT_TOL = 1e-10

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Point2:
    x: float
    y: float


@dataclass(frozen=True)
class Ellipse:
    """Origin-centered ellipse with semi-axes along x and y."""

    semi_axis_x: float
    semi_axis_y: float

    def __post_init__(self) -> None:
        ok = (
            math.isfinite(self.semi_axis_x)
            and math.isfinite(self.semi_axis_y)
            and self.semi_axis_x > 0
            and self.semi_axis_y > 0
        )
        if not ok:
            raise ValueError(f"semi-axes must be finite and positive, got "
                             f"({self.semi_axis_x}, {self.semi_axis_y})")


@dataclass(frozen=True)
class Line2:
    """Normalized line ``l*x + m*y + n = 0`` (``l**2 + m**2 = 1``).

    The sign convention makes the first nonzero of (l, m) positive so that
    equal lines produce equal coefficient triples.
    """

    l: float
    m: float
    n: float

    @classmethod
    def from_general(cls, l: float, m: float, n: float) -> "Line2":
        norm = math.hypot(l, m)
        if norm < 1e-300:
            raise ValueError("degenerate line: (l, m) = (0, 0)")
        l, m, n = l / norm, m / norm, n / norm
        if l < -1e-14 or (abs(l) <= 1e-14 and m < 0):
            l, m, n = -l, -m, -n
        return cls(l, m, n)

    @classmethod
    def through(cls, p: Point2, q: Point2) -> "Line2":
        return cls.from_general(p.y - q.y, q.x - p.x, p.x * q.y - q.x * p.y)

    def eval_at(self, p: Point2) -> float:
        """Signed distance from p to the line (coefficients are normalized)."""
        return self.l * p.x + self.m * p.y + self.n


def point_at(e: Ellipse, t: float) -> Point2:
    """Boundary point at parameter angle t: ``(a cos t, b sin t)``."""
    return Point2(e.semi_axis_x * math.cos(t), e.semi_axis_y * math.sin(t))


def parameter_angle(e: Ellipse, p: Point2) -> float:
    """Parameter angle in [0, 2pi) of the boundary point nearest-in-angle to p."""
    return math.atan2(p.y / e.semi_axis_y, p.x / e.semi_axis_x) % TWO_PI


def boundary_residual(e: Ellipse, p: Point2) -> float:
    """``x^2/a^2 + y^2/b^2 - 1``: zero on the boundary, negative inside."""
    xa = p.x / e.semi_axis_x
    yb = p.y / e.semi_axis_y
    return xa * xa + yb * yb - 1.0


def tangent_at(e: Ellipse, t: float) -> Line2:
    """Tangent line at the boundary point with parameter angle t."""
    ct, st = math.cos(t), math.sin(t)
    return Line2.from_general(ct / e.semi_axis_x, st / e.semi_axis_y, -1.0)


def tangent_contacts_from(e: Ellipse, p: Point2) -> list[tuple[Line2, Point2]]:
    """Tangent lines from p with their contact points, ordered by contact angle.

    The ellipse is scaled to the unit circle (x/a, y/b), where the contact
    points of the tangents from the scaled point are classical, then mapped
    back; affine maps preserve tangency.  A point on the boundary yields the
    single tangent at p, twice.
    """
    r = boundary_residual(e, p)
    if r < -TOLERANCE_INSIDE:
        raise PointInsideConic(
            f"point ({p.x}, {p.y}) lies inside the conic (residual {r:.3e})")
    a, b = e.semi_axis_x, e.semi_axis_y
    px, py = p.x / a, p.y / b
    if r <= TOLERANCE_INSIDE:
        t = math.atan2(py, px)
        line = tangent_at(e, t)
        contact = point_at(e, t)
        return [(line, contact), (line, contact)]
    d2 = px * px + py * py
    d = math.sqrt(d2)
    ux, uy = px / d, py / d
    # Contact points on the unit circle: (1/d) u +- sqrt(1 - 1/d^2) u_perp.
    alpha = 1.0 / d
    beta = math.sqrt(max(d2 - 1.0, 0.0)) / d
    out = []
    for s in (1.0, -1.0):
        cx = alpha * ux - s * beta * uy
        cy = alpha * uy + s * beta * ux
        contact = Point2(a * cx, b * cy)
        line = Line2.from_general(cx / a, cy / b, -1.0)
        out.append((math.atan2(cy, cx) % TWO_PI, line, contact))
    out.sort(key=lambda item: item[0])
    return [(line, contact) for _, line, contact in out]


def tangents_from(e: Ellipse, p: Point2) -> tuple[Line2, Line2]:
    """The two tangent lines through an exterior point p, ordered by the
    parameter angle of their contact points (CCW from the positive x-axis)."""
    pair = tangent_contacts_from(e, p)
    return pair[0][0], pair[1][0]


def line_ellipse_intersections(e: Ellipse, line: Line2) -> list[Point2]:
    """Real intersections of a line with the ellipse, sorted by parameter angle.

    Tangent lines report a single point (double root collapsed when the
    discriminant is below DISCRIMINANT_TOL relative to coefficient scale).
    """
    a, b = e.semi_axis_x, e.semi_axis_y
    # Foot of the perpendicular from the origin, plus the line direction.
    fx, fy = -line.n * line.l, -line.n * line.m
    dx, dy = -line.m, line.l
    qa = (dx / a) ** 2 + (dy / b) ** 2
    qb = 2.0 * (fx * dx / (a * a) + fy * dy / (b * b))
    qc = (fx / a) ** 2 + (fy / b) ** 2 - 1.0
    disc = qb * qb - 4.0 * qa * qc
    scale = qb * qb + abs(4.0 * qa * qc) + 1e-300
    if disc <= -DISCRIMINANT_TOL * scale:
        return []
    if disc <= DISCRIMINANT_TOL * scale:
        s = -qb / (2.0 * qa)
        return [Point2(fx + s * dx, fy + s * dy)]
    root = math.sqrt(disc)
    points = [
        Point2(fx + s * dx, fy + s * dy)
        for s in ((-qb - root) / (2.0 * qa), (-qb + root) / (2.0 * qa))
    ]
    points.sort(key=lambda p: parameter_angle(e, p))
    return points


def tangency_residual(e: Ellipse, line: Line2) -> float:
    """``|a^2 l^2 + b^2 m^2 - n^2|`` for normalized coefficients.

    Zero exactly when the line is tangent to the ellipse; this is the porism
    check metric.
    """
    a, b = e.semi_axis_x, e.semi_axis_y
    return abs(a * a * line.l * line.l + b * b * line.m * line.m - line.n * line.n)
