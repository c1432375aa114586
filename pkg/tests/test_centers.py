import math

import numpy as np
import pytest

from ponceletlab.centers import (
    DerivedKind,
    Triangle,
    center_position,
    derived_triangle,
    has_center,
    register_center,
    registry_listing,
    side_lengths,
    signed_area,
)
from ponceletlab.conics import Point2
from ponceletlab.errors import (
    CenterAtInfinity,
    DegenerateDerived,
    DegenerateTriangle,
    UnknownCenter,
)

from conftest import dist, random_triangle

RIGHT = Triangle(Point2(0, 0), Point2(4, 0), Point2(0, 3))


def equilateral(radius=1.0):
    pts = [Point2(radius * math.cos(2 * math.pi * k / 3),
                  radius * math.sin(2 * math.pi * k / 3)) for k in range(3)]
    return Triangle(*pts)


def test_side_lengths_examples():
    s = side_lengths(equilateral())
    side = math.sqrt(3)
    for v in (s.s1, s.s2, s.s3):
        assert math.isclose(v, side)
    s = side_lengths(RIGHT)
    assert (round(s.s1, 12), round(s.s2, 12), round(s.s3, 12)) == (5.0, 3.0, 4.0)
    with pytest.raises(DegenerateTriangle):
        side_lengths(Triangle(Point2(0, 0), Point2(1, 0), Point2(2, 0)))


def test_every_center_of_equilateral_is_the_center():
    tri = equilateral()
    for k, _ in registry_listing():
        if k in (11, 59):
            continue  # undefined on equilateral triangles: trilinears all vanish
        c = center_position(tri, k)
        assert math.hypot(c.x, c.y) < 1e-14


def test_feuerbach_on_float_equilateral_is_incircle_bound_or_undefined():
    # X11's trilinears vanish identically on exact equilaterals; a float
    # equilateral either trips the vanishing-normalizer guard or lands on
    # the incircle, never anywhere else.
    tri = equilateral()
    inradius = signed_area(tri) / (0.5 * sum(
        (side_lengths(tri).s1, side_lengths(tri).s2, side_lengths(tri).s3)))
    try:
        x11 = center_position(tri, 11)
    except CenterAtInfinity:
        return
    x1 = center_position(tri, 1)
    assert dist(x1, x11) == pytest.approx(inradius, abs=1e-9)


def test_identically_zero_trilinears_raise():
    if not has_center(2001):
        register_center(2001, "vanishing", lambda a, b, c: 0.0)
    with pytest.raises(CenterAtInfinity):
        center_position(RIGHT, 2001)


def test_orthocenter_of_right_triangle_is_the_right_vertex():
    c = center_position(RIGHT, 4)
    assert dist(c, Point2(0, 0)) < 1e-13


def test_incenter_of_345():
    c = center_position(RIGHT, 1)
    assert dist(c, Point2(1, 1)) < 1e-13


def test_unknown_center():
    with pytest.raises(UnknownCenter):
        center_position(RIGHT, 1000)


def _literal_trilinears():
    """The catalog forms, valid away from right/isoceles triangles."""

    def cosA(a, b, c):
        return (b * b + c * c - a * a) / (2 * b * c)

    def cosBC(a, b, c):
        s = 0.5 * (a + b + c)
        area = math.sqrt(s * (s - a) * (s - b) * (s - c))
        cos_b = (c * c + a * a - b * b) / (2 * c * a)
        cos_c = (a * a + b * b - c * c) / (2 * a * b)
        return cos_b * cos_c + (2 * area / (a * c)) * (2 * area / (a * b))

    return {
        2: lambda a, b, c: 1 / a,
        4: lambda a, b, c: 1 / cosA(a, b, c),
        5: cosBC,
        7: lambda a, b, c: 1 / (b + c - a),
        8: lambda a, b, c: (b + c - a) / a,
        10: lambda a, b, c: (b + c) / a,
        11: lambda a, b, c: 1 - cosBC(a, b, c),
        59: lambda a, b, c: 1 / (1 - cosBC(a, b, c)),
    }


def test_registry_matches_literal_catalog_forms(rng):
    """The stable representatives are projectively equal to the catalog ones."""
    literals = _literal_trilinears()
    for _ in range(50):
        tri = random_triangle(rng)
        s = side_lengths(tri)
        for k, lit in literals.items():
            mine = center_position(tri, k)
            alpha = lit(s.s1, s.s2, s.s3)
            beta = lit(s.s2, s.s3, s.s1)
            gamma = lit(s.s3, s.s1, s.s2)
            w = (alpha * s.s1, beta * s.s2, gamma * s.s3)
            den = sum(w)
            ref = Point2(
                (w[0] * tri.v1.x + w[1] * tri.v2.x + w[2] * tri.v3.x) / den,
                (w[0] * tri.v1.y + w[1] * tri.v2.y + w[2] * tri.v3.y) / den)
            assert dist(mine, ref) < 1e-9


def test_homogeneity_of_the_extension_hook(rng):
    if not has_center(1001):
        register_center(1001, "incenter-doubled", lambda a, b, c: 2.0)
    for _ in range(20):
        tri = random_triangle(rng)
        assert dist(center_position(tri, 1001), center_position(tri, 1)) < 1e-14


def test_register_center_rejects_duplicates():
    with pytest.raises(ValueError):
        register_center(1, "again", lambda a, b, c: 1.0)
    with pytest.raises(ValueError):
        register_center(-3, "bad", lambda a, b, c: 1.0)


def test_registry_listing_names():
    listing = dict(registry_listing())
    assert listing[1] == "incenter"
    assert listing[9] == "mittenpunkt"
    assert listing[11] == "Feuerbach point"
    assert set(listing) >= {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 59}


def test_similarity_equivariance(rng):
    theta, scale, shift = 0.83, 1.7, np.array([0.4, -2.1])
    rot = np.array([[math.cos(theta), -math.sin(theta)],
                    [math.sin(theta), math.cos(theta)]])

    def mapped(p):
        q = scale * rot @ np.array([p.x, p.y]) + shift
        return Point2(q[0], q[1])

    for _ in range(25):
        tri = random_triangle(rng)
        tri_m = Triangle(*(mapped(v) for v in tri.vertices()))
        for k, _name in registry_listing():
            try:
                a = center_position(tri, k)
            except CenterAtInfinity:
                continue
            b = center_position(tri_m, k)
            assert dist(mapped(a), b) < 1e-10


def test_euler_line(rng):
    for _ in range(100):
        tri = random_triangle(rng)
        x2 = center_position(tri, 2)
        x3 = center_position(tri, 3)
        x4 = center_position(tri, 4)
        assert dist(x2, x3) / dist(x3, x4) == pytest.approx(1 / 3, abs=1e-10)
        cross = ((x4.x - x3.x) * (x2.y - x3.y) - (x4.y - x3.y) * (x2.x - x3.x))
        assert abs(cross) < 1e-10 * dist(x3, x4) ** 2


def test_feuerbach_point_lies_on_incircle(rng):
    for _ in range(100):
        tri = random_triangle(rng)
        s = side_lengths(tri)
        semi = 0.5 * (s.s1 + s.s2 + s.s3)
        area = signed_area(tri)
        inradius = area / semi
        x1 = center_position(tri, 1)
        x11 = center_position(tri, 11)
        assert dist(x1, x11) == pytest.approx(inradius, abs=1e-10)


def test_mittenpunkt_is_symmedian_of_excentral(rng):
    for _ in range(50):
        tri = random_triangle(rng)
        exc = derived_triangle(tri, DerivedKind.EXCENTRAL)
        assert dist(center_position(exc, 6), center_position(tri, 9)) < 1e-9


def test_medial_triangle_of_345():
    med = derived_triangle(RIGHT, DerivedKind.MEDIAL)
    got = {(round(v.x, 12), round(v.y, 12)) for v in med.vertices()}
    assert got == {(2.0, 1.5), (0.0, 1.5), (2.0, 0.0)}


def test_excentral_of_equilateral_is_scaled_half_turn():
    tri = equilateral()
    exc = derived_triangle(tri, DerivedKind.EXCENTRAL)
    assert signed_area(exc) > 0
    vertices = {(round(v.x, 9), round(v.y, 9)) for v in exc.vertices()}
    expect = {(round(-2 * v.x, 9), round(-2 * v.y, 9)) for v in tri.vertices()}
    assert vertices == expect


def test_orthic_of_right_triangle_degenerates():
    with pytest.raises(DegenerateDerived):
        derived_triangle(RIGHT, DerivedKind.ORTHIC)


def test_orthic_feet_lie_on_sides(rng):
    for _ in range(30):
        tri = random_triangle(rng)
        try:
            orth = derived_triangle(tri, DerivedKind.ORTHIC)
        except DegenerateDerived:
            continue
        # foot 1 is on line v2v3 and sees v1 orthogonally
        w1 = orth.v1
        d23 = (tri.v3.x - tri.v2.x, tri.v3.y - tri.v2.y)
        cross = (w1.x - tri.v2.x) * d23[1] - (w1.y - tri.v2.y) * d23[0]
        dot = (tri.v1.x - w1.x) * d23[0] + (tri.v1.y - w1.y) * d23[1]
        assert abs(cross) < 1e-9
        assert abs(dot) < 1e-9


def test_intouch_points_at_inradius_distance(rng):
    for _ in range(30):
        tri = random_triangle(rng)
        s = side_lengths(tri)
        inradius = signed_area(tri) / (0.5 * (s.s1 + s.s2 + s.s3))
        x1 = center_position(tri, 1)
        touch = derived_triangle(tri, DerivedKind.INTOUCH)
        for v in touch.vertices():
            assert dist(x1, v) == pytest.approx(inradius, abs=1e-10)


def test_reference_derived_is_identity():
    assert derived_triangle(RIGHT, DerivedKind.REFERENCE) is RIGHT


def test_derived_output_is_ccw(rng):
    for kind in (DerivedKind.MEDIAL, DerivedKind.ORTHIC,
                 DerivedKind.EXCENTRAL, DerivedKind.INTOUCH):
        for _ in range(20):
            tri = random_triangle(rng)
            try:
                out = derived_triangle(tri, kind)
            except DegenerateDerived:
                continue
            assert signed_area(out) > 0
