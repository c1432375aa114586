"""Triangle centers from trilinear coordinate functions, plus derived triangles.

The registry holds twelve classical centers (X1..X11 and X59) keyed by their
Kimberling index.  A center is described by its first trilinear coordinate as
a function of the side lengths; the full triple follows by cyclic permutation
``f(s1,s2,s3) : f(s2,s3,s1) : f(s3,s1,s2)``.

Some catalog trilinears blow up on valid triangles (``sec A`` at a right
angle, ``1/(1 - cos(B-C))`` on an isoceles triangle).  The registry stores
projectively equal representatives that stay finite there, e.g. ``cos B cos C``
for X4, so sweeps across such triangles do not fabricate infinities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator

from .conics import Point2
from .errors import CenterAtInfinity, DegenerateDerived, DegenerateTriangle, UnknownCenter


@dataclass(frozen=True)
class Triangle:
    v1: Point2
    v2: Point2
    v3: Point2

    def vertices(self) -> tuple[Point2, Point2, Point2]:
        return (self.v1, self.v2, self.v3)

    def __iter__(self) -> Iterator[Point2]:
        return iter(self.vertices())


@dataclass(frozen=True)
class SideLengths:
    s1: float
    s2: float
    s3: float


class DerivedKind(str, Enum):
    REFERENCE = "reference"
    MEDIAL = "medial"
    ORTHIC = "orthic"
    EXCENTRAL = "excentral"
    INTOUCH = "intouch"


@dataclass(frozen=True)
class CenterFunction:
    index: int
    name: str
    first_trilinear: Callable[[float, float, float], float]


def signed_area(t: Triangle) -> float:
    return 0.5 * (
        (t.v2.x - t.v1.x) * (t.v3.y - t.v1.y)
        - (t.v3.x - t.v1.x) * (t.v2.y - t.v1.y)
    )


def bbox_size(t: Triangle) -> float:
    xs = (t.v1.x, t.v2.x, t.v3.x)
    ys = (t.v1.y, t.v2.y, t.v3.y)
    return max(max(xs) - min(xs), max(ys) - min(ys))


def make_ccw(v1: Point2, v2: Point2, v3: Point2) -> Triangle:
    """Triangle with positive signed area; v1 is kept first."""
    t = Triangle(v1, v2, v3)
    return t if signed_area(t) >= 0 else Triangle(v1, v3, v2)


def side_lengths(t: Triangle) -> SideLengths:
    """Euclidean side lengths, s_i opposite vertex i."""
    s1 = math.dist((t.v2.x, t.v2.y), (t.v3.x, t.v3.y))
    s2 = math.dist((t.v3.x, t.v3.y), (t.v1.x, t.v1.y))
    s3 = math.dist((t.v1.x, t.v1.y), (t.v2.x, t.v2.y))
    longest = max(s1, s2, s3)
    margin = min(s1 + s2 - s3, s2 + s3 - s1, s3 + s1 - s2)
    if longest <= 0 or margin <= 1e-12 * longest:
        raise DegenerateTriangle(
            f"triangle inequality fails: sides ({s1:.6g}, {s2:.6g}, {s3:.6g})")
    return SideLengths(s1, s2, s3)


def _cos_opposite(opp: float, p: float, q: float) -> float:
    """Cosine of the angle opposite side `opp`, flanked by sides p and q."""
    return (p * p + q * q - opp * opp) / (2.0 * p * q)


def _x4_trilinear(a: float, b: float, c: float) -> float:
    # sec A scaled by cos A cos B cos C: finite across right triangles.
    return _cos_opposite(b, c, a) * _cos_opposite(c, a, b)


def _x5_trilinear(a: float, b: float, c: float) -> float:
    # cos(B-C) scaled by 2a^2bc / (abc): the law-of-cosines expansion
    # cos(B-C) = (a^2(b^2+c^2) - (b^2-c^2)^2) / (2a^2 bc) made polynomial.
    return b * c * (a * a * (b * b + c * c) - (b * b - c * c) ** 2)


def _x11_trilinear(a: float, b: float, c: float) -> float:
    # 1 - cos(B-C) equals (b-c)^2 (b+c-a)(a+b+c) / (2a^2 bc); the polynomial
    # multiple below stays exact near isoceles and equilateral triangles
    # where the trigonometric form is pure cancellation noise.
    return b * c * (b - c) ** 2 * (b + c - a)


def _x59_trilinear(a: float, b: float, c: float) -> float:
    # 1/(1 - cos(B-C)) scaled by the cyclic product of the X11 numerators:
    # finite on isoceles triangles, where it collapses to the far vertex.
    return a * (c - a) ** 2 * (a - b) ** 2 * (c + a - b) * (a + b - c)


_BUILTIN_CENTERS = [
    CenterFunction(1, "incenter", lambda a, b, c: 1.0),
    CenterFunction(2, "centroid", lambda a, b, c: b * c),
    CenterFunction(3, "circumcenter", lambda a, b, c: _cos_opposite(a, b, c)),
    CenterFunction(4, "orthocenter", _x4_trilinear),
    CenterFunction(5, "nine-point center", _x5_trilinear),
    CenterFunction(6, "symmedian point", lambda a, b, c: a),
    CenterFunction(7, "Gergonne point", lambda a, b, c: (c + a - b) * (a + b - c)),
    CenterFunction(8, "Nagel point", lambda a, b, c: (b + c - a) * b * c),
    CenterFunction(9, "mittenpunkt", lambda a, b, c: b + c - a),
    CenterFunction(10, "Spieker center", lambda a, b, c: (b + c) * b * c),
    CenterFunction(11, "Feuerbach point", _x11_trilinear),
    CenterFunction(59, "isogonal conjugate of X11", _x59_trilinear),
]

_REGISTRY: dict[int, CenterFunction] = {cf.index: cf for cf in _BUILTIN_CENTERS}


def register_center(index: int, name: str,
                    first_trilinear: Callable[[float, float, float], float]) -> None:
    """Extension hook: add a center by its first trilinear coordinate."""
    if index in _REGISTRY:
        raise ValueError(f"center index {index} already registered")
    if index < 1:
        raise ValueError("center index must be a positive integer")
    _REGISTRY[index] = CenterFunction(index, name, first_trilinear)


def registry_listing() -> list[tuple[int, str]]:
    """(index, name) pairs for every registered center, sorted by index."""
    return [(cf.index, cf.name) for cf in
            sorted(_REGISTRY.values(), key=lambda cf: cf.index)]


def has_center(index: int) -> bool:
    return index in _REGISTRY


def center_position(t: Triangle, k: int) -> Point2:
    """Cartesian position of center X_k.

    The trilinear triple (alpha : beta : gamma) converts through barycentric
    weighting: ``(alpha s1 v1 + beta s2 v2 + gamma s3 v3) / (alpha s1 + beta s2
    + gamma s3)``.
    """
    try:
        cf = _REGISTRY[k]
    except KeyError:
        raise UnknownCenter(f"no center with index {k} in the registry") from None
    s = side_lengths(t)
    alpha = cf.first_trilinear(s.s1, s.s2, s.s3)
    beta = cf.first_trilinear(s.s2, s.s3, s.s1)
    gamma = cf.first_trilinear(s.s3, s.s1, s.s2)
    w1, w2, w3 = alpha * s.s1, beta * s.s2, gamma * s.s3
    if not (math.isfinite(w1) and math.isfinite(w2) and math.isfinite(w3)):
        raise CenterAtInfinity(f"trilinears of X{k} are not finite for this triangle")
    den = w1 + w2 + w3
    largest = max(abs(w1), abs(w2), abs(w3))
    if largest == 0.0 or abs(den) < 1e-14 * largest:
        raise CenterAtInfinity(f"X{k} normalizer vanishes for this triangle")
    return Point2(
        (w1 * t.v1.x + w2 * t.v2.x + w3 * t.v3.x) / den,
        (w1 * t.v1.y + w2 * t.v2.y + w3 * t.v3.y) / den,
    )


def _midpoint(p: Point2, q: Point2) -> Point2:
    return Point2(0.5 * (p.x + q.x), 0.5 * (p.y + q.y))


def _project_onto_line(p: Point2, a: Point2, b: Point2) -> Point2:
    """Orthogonal projection of p onto the line through a and b."""
    vx, vy = b.x - a.x, b.y - a.y
    den = vx * vx + vy * vy
    u = ((p.x - a.x) * vx + (p.y - a.y) * vy) / den
    return Point2(a.x + u * vx, a.y + u * vy)


def derived_triangle(t: Triangle, kind: DerivedKind) -> Triangle:
    """Medial, orthic, excentral or intouch triangle of t, reoriented CCW.

    All but the excentral come from direct Euclidean construction (midpoints
    and projections); the excentral uses its trilinears (-1:1:1) cyclically.
    """
    kind = DerivedKind(kind)
    if kind is DerivedKind.REFERENCE:
        return t
    s = side_lengths(t)  # validates non-degeneracy
    if kind is DerivedKind.MEDIAL:
        w1, w2, w3 = _midpoint(t.v2, t.v3), _midpoint(t.v3, t.v1), _midpoint(t.v1, t.v2)
    elif kind is DerivedKind.ORTHIC:
        w1 = _project_onto_line(t.v1, t.v2, t.v3)
        w2 = _project_onto_line(t.v2, t.v3, t.v1)
        w3 = _project_onto_line(t.v3, t.v1, t.v2)
    elif kind is DerivedKind.EXCENTRAL:
        w1 = _excenter(t, s, -1.0, 1.0, 1.0)
        w2 = _excenter(t, s, 1.0, -1.0, 1.0)
        w3 = _excenter(t, s, 1.0, 1.0, -1.0)
    elif kind is DerivedKind.INTOUCH:
        inc = center_position(t, 1)
        w1 = _project_onto_line(inc, t.v2, t.v3)
        w2 = _project_onto_line(inc, t.v3, t.v1)
        w3 = _project_onto_line(inc, t.v1, t.v2)
    else:  # pragma: no cover
        raise ValueError(f"unhandled derived kind {kind}")
    out = Triangle(w1, w2, w3)
    box = max(bbox_size(t), bbox_size(out))
    if abs(signed_area(out)) <= 1e-14 * box * box:
        raise DegenerateDerived(f"{kind.value} triangle is degenerate")
    return out if signed_area(out) > 0 else Triangle(w1, w3, w2)


def _excenter(t: Triangle, s: SideLengths, e1: float, e2: float, e3: float) -> Point2:
    w1, w2, w3 = e1 * s.s1, e2 * s.s2, e3 * s.s3
    den = w1 + w2 + w3
    return Point2(
        (w1 * t.v1.x + w2 * t.v2.x + w3 * t.v3.x) / den,
        (w1 * t.v1.y + w2 * t.v2.y + w3 * t.v3.y) / den,
    )
