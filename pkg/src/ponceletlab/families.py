"""Poncelet triangle families between concentric, axis-aligned ellipse pairs.

Six named families (confocal, incircle, circumcircle, homothetic, dual,
excentral) plus a generic pair.  For every non-excentral kind the caustic is
produced in closed form so that ``a_c/a + b_c/b = 1`` holds exactly; that is
the 3-periodic closure condition for this conic configuration, and it is
cross-checked empirically by the tangency oracle in the test suite rather
than taken on faith.

The excentral family is realized as the excentral transform of the confocal
family with the same outer ellipse: its sides are the external bisectors of
the billiard triangles, hence tangent to the shared outer ellipse, and its
vertices (the excenters) sweep an ellipse recovered here by a conic fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .centers import DerivedKind, Triangle, bbox_size, derived_triangle, make_ccw, signed_area
from .conics import (
    TWO_PI,
    Ellipse,
    Line2,
    Point2,
    line_ellipse_intersections,
    point_at,
    tangency_residual,
    tangent_contacts_from,
)
from .errors import DegenerateTriangle, FreeParamOutOfRange, InvalidAspect
from .fitting import conic_fit, conic_semi_axes

_ASPECT_TOL = 1e-12
_EXCENTRAL_FIT_SAMPLES = 256


class FamilyKind(str, Enum):
    CONFOCAL = "confocal"
    INCIRCLE = "incircle"
    CIRCUMCIRCLE = "circumcircle"
    HOMOTHETIC = "homothetic"
    DUAL = "dual"
    EXCENTRAL = "excentral"
    GENERIC = "generic"


#: Center expected to stay at the common center for each named family.
STATIONARY_CENTER = {
    FamilyKind.CONFOCAL: 9,
    FamilyKind.INCIRCLE: 1,
    FamilyKind.CIRCUMCIRCLE: 3,
    FamilyKind.HOMOTHETIC: 2,
    FamilyKind.DUAL: 4,
    FamilyKind.EXCENTRAL: 6,
}


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    outer: Ellipse
    caustic: Ellipse
    base: Optional["FamilySpec"] = None
    expected_stationary_center: Optional[int] = None

    @property
    def scale(self) -> float:
        return max(self.outer.semi_axis_x, self.outer.semi_axis_y)


def closure_defect(outer: Ellipse, caustic: Ellipse) -> float:
    """``a_c/a + b_c/b - 1``: zero iff the 3-periodic family closes."""
    return (caustic.semi_axis_x / outer.semi_axis_x
            + caustic.semi_axis_y / outer.semi_axis_y - 1.0)


def _confocal_caustic(a: float, b: float) -> Ellipse:
    # a_c = a(d - b^2)/(a^2 - b^2) rationalizes to a^3/(d + b^2), which is
    # exact for a = b as well (the homothetic-of-circle degeneration a/2).
    delta = math.sqrt(a ** 4 - a * a * b * b + b ** 4)
    return Ellipse(a ** 3 / (delta + b * b), b ** 3 / (delta + a * a))


def make_family(kind: FamilyKind | str, a: float, b: float,
                free: float | None = None) -> FamilySpec:
    """Build a family spec from the outer semi-axes (and a free parameter
    where the kind has one)."""
    kind = FamilyKind(kind)
    if not (math.isfinite(a) and math.isfinite(b) and a > 0 and b > 0):
        raise InvalidAspect(f"outer semi-axes must be positive, got ({a}, {b})")
    outer = Ellipse(a, b)
    stationary = STATIONARY_CENTER.get(kind)

    if kind is FamilyKind.CONFOCAL:
        caustic = _confocal_caustic(a, b)
    elif kind is FamilyKind.INCIRCLE:
        r = a * b / (a + b)
        caustic = Ellipse(r, r)
    elif kind is FamilyKind.CIRCUMCIRCLE:
        if abs(a - b) > _ASPECT_TOL * max(a, b):
            raise InvalidAspect(f"circumcircle family needs a = b, got ({a}, {b})")
        if free is None:
            free = 0.6
        if not 0.0 < free < 1.0:
            raise FreeParamOutOfRange(
                f"circumcircle caustic fraction must lie in (0, 1), got {free}")
        caustic = Ellipse(free * a, (1.0 - free) * a)
    elif kind is FamilyKind.HOMOTHETIC:
        caustic = Ellipse(a / 2.0, b / 2.0)
    elif kind is FamilyKind.DUAL:
        caustic = Ellipse(a * b * b / (a * a + b * b), a * a * b / (a * a + b * b))
    elif kind is FamilyKind.GENERIC:
        if free is None:
            raise FreeParamOutOfRange("generic family needs the caustic x semi-axis")
        if not 0.0 < free < a:
            raise FreeParamOutOfRange(
                f"generic caustic x semi-axis must lie in (0, {a}), got {free}")
        caustic = Ellipse(free, b * (1.0 - free / a))
    elif kind is FamilyKind.EXCENTRAL:
        base = make_family(FamilyKind.CONFOCAL, a, b)
        fitted = _fit_excentral_outer(base)
        # Roles invert: the base outer is what the excentral sides touch.
        return FamilySpec(kind, outer=fitted, caustic=base.outer, base=base,
                          expected_stationary_center=stationary)
    else:  # pragma: no cover
        raise ValueError(f"unhandled family kind {kind}")
    return FamilySpec(kind, outer=outer, caustic=caustic,
                      expected_stationary_center=stationary)


def _fit_excentral_outer(base: FamilySpec) -> Ellipse:
    pts = []
    for i in range(_EXCENTRAL_FIT_SAMPLES):
        t = TWO_PI * i / _EXCENTRAL_FIT_SAMPLES
        tri = derived_triangle(triangle_at(base, t), DerivedKind.EXCENTRAL)
        pts.extend(tri.vertices())
    coeffs, _ = conic_fit(pts)
    sx, sy = conic_semi_axes(coeffs)
    return Ellipse(sx, sy)


def _forward_tangent(caustic: Ellipse, v: Point2) -> Line2:
    """Tangent from v whose contact point comes first strictly after v in CCW
    polar order; this makes the chord chain traverse the outer ellipse CCW."""
    angle_v = math.atan2(v.y, v.x)
    best_line, best_delta = None, math.inf
    for line, contact in tangent_contacts_from(caustic, v):
        delta = (math.atan2(contact.y, contact.x) - angle_v) % TWO_PI
        if delta == 0.0:
            delta = TWO_PI
        if delta < best_delta:
            best_line, best_delta = line, delta
    return best_line


def _far_intersection(outer: Ellipse, line: Line2, v: Point2) -> Point2:
    pts = line_ellipse_intersections(outer, line)
    if not pts:
        raise DegenerateTriangle("tangent chord misses the outer ellipse")
    far = max(pts, key=lambda p: (p.x - v.x) ** 2 + (p.y - v.y) ** 2)
    scale = max(outer.semi_axis_x, outer.semi_axis_y)
    if (far.x - v.x) ** 2 + (far.y - v.y) ** 2 < (1e-9 * scale) ** 2:
        raise DegenerateTriangle("tangent chord degenerates to a point")
    return far


def triangle_at(f: FamilySpec, t: float) -> Triangle:
    """The family triangle whose first vertex sits at parameter angle t.

    Homothetic families shortcut to vertices at t, t + 2pi/3, t + 4pi/3 (the
    affine image of the inscribed equilateral family); the excentral family
    transforms its confocal base; everything else walks tangent chords.
    """
    if f.kind is FamilyKind.HOMOTHETIC:
        tri = Triangle(point_at(f.outer, t),
                       point_at(f.outer, t + TWO_PI / 3.0),
                       point_at(f.outer, t + 2.0 * TWO_PI / 3.0))
    elif f.kind is FamilyKind.EXCENTRAL:
        return derived_triangle(triangle_at(f.base, t), DerivedKind.EXCENTRAL)
    else:
        v1 = point_at(f.outer, t)
        side1 = _forward_tangent(f.caustic, v1)
        v2 = _far_intersection(f.outer, side1, v1)
        side2 = _forward_tangent(f.caustic, v2)
        v3 = _far_intersection(f.outer, side2, v2)
        tri = make_ccw(v1, v2, v3)
    box = bbox_size(tri)
    if signed_area(tri) <= 1e-14 * box * box:
        raise DegenerateTriangle(f"family triangle at t={t} is degenerate")
    return tri


def triangle_sides(tri: Triangle) -> tuple[Line2, Line2, Line2]:
    return (Line2.through(tri.v1, tri.v2),
            Line2.through(tri.v2, tri.v3),
            Line2.through(tri.v3, tri.v1))


def porism_residual(f: FamilySpec, t: float) -> float:
    """Max tangency residual of the three side lines against the caustic."""
    tri = triangle_at(f, t)
    return max(tangency_residual(f.caustic, side) for side in triangle_sides(tri))
