import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ponceletlab.conics import (
    Ellipse,
    Line2,
    Point2,
    boundary_residual,
    line_ellipse_intersections,
    parameter_angle,
    point_at,
    tangency_residual,
    tangent_contacts_from,
    tangents_from,
)
from ponceletlab.errors import PointInsideConic

from conftest import dist


def test_point_at_axis_points():
    assert point_at(Ellipse(2, 1), 0.0) == Point2(2.0, 0.0)
    p = point_at(Ellipse(2, 1), math.pi / 2)
    assert abs(p.x) < 1e-15 and p.y == 1.0
    p = point_at(Ellipse(1, 1), math.pi / 4)
    assert math.isclose(p.x, math.sqrt(2) / 2)
    assert math.isclose(p.y, math.sqrt(2) / 2)


def test_boundary_residual_values():
    assert boundary_residual(Ellipse(2, 1), Point2(2, 0)) == 0.0
    assert boundary_residual(Ellipse(2, 1), Point2(0, 0)) == -1.0
    assert boundary_residual(Ellipse(1, 1), Point2(2, 0)) == 3.0


@given(st.floats(0, 2 * math.pi), st.floats(0.1, 10), st.floats(0.1, 10))
def test_point_at_lies_on_boundary(t, a, b):
    e = Ellipse(a, b)
    assert abs(boundary_residual(e, point_at(e, t))) < 1e-14


def test_ellipse_rejects_bad_axes():
    with pytest.raises(ValueError):
        Ellipse(0.0, 1.0)
    with pytest.raises(ValueError):
        Ellipse(1.0, -2.0)
    with pytest.raises(ValueError):
        Ellipse(math.nan, 1.0)


def test_line_normalization_is_canonical():
    l1 = Line2.from_general(2.0, 0.0, -4.0)
    l2 = Line2.from_general(-1.0, 0.0, 2.0)
    assert math.isclose(l1.l, l2.l) and math.isclose(l1.n, l2.n)
    assert math.isclose(l1.l ** 2 + l1.m ** 2, 1.0)
    with pytest.raises(ValueError):
        Line2.from_general(0.0, 0.0, 1.0)


def test_unit_circle_tangents_from_classic_point():
    # Tangents from (2, 0) touch the unit circle at (1/2, +-sqrt(3)/2).
    e = Ellipse(1, 1)
    pairs = tangent_contacts_from(e, Point2(2, 0))
    contacts = [c for _, c in pairs]
    assert math.isclose(contacts[0].x, 0.5, abs_tol=1e-12)
    assert math.isclose(contacts[0].y, math.sqrt(3) / 2, abs_tol=1e-12)
    assert math.isclose(contacts[1].y, -math.sqrt(3) / 2, abs_tol=1e-12)
    for line, contact in pairs:
        assert abs(line.eval_at(Point2(2, 0))) < 1e-12
        assert abs(line.eval_at(contact)) < 1e-12
        assert tangency_residual(e, line) < 1e-12


def test_scaled_tangents_match_unscaled_circle_solution():
    # e = (1, 0.5): contacts are the (x, y/2) image of the circle solution.
    e = Ellipse(1, 0.5)
    pairs = tangent_contacts_from(e, Point2(2, 0))
    expect = [(0.5, math.sqrt(3) / 4), (0.5, -math.sqrt(3) / 4)]
    for (line, contact), (ex, ey) in zip(pairs, expect):
        assert math.isclose(contact.x, ex, abs_tol=1e-12)
        assert math.isclose(contact.y, ey, abs_tol=1e-12)
        assert abs(line.eval_at(contact)) < 1e-12
        # tangency: the line meets the ellipse in a single (double) point
        hits = line_ellipse_intersections(e, line)
        assert len(hits) == 1
        assert dist(hits[0], contact) < 1e-9


def test_tangent_from_boundary_point_is_duplicated():
    e = Ellipse(2, 1)
    l1, l2 = tangents_from(e, Point2(2, 0))
    assert l1 == l2
    # the tangent at the vertex is x = 2
    assert math.isclose(abs(l1.l), 1.0) and abs(l1.m) < 1e-15
    assert math.isclose(l1.n / l1.l, -2.0)


def test_tangents_from_interior_point_raises():
    with pytest.raises(PointInsideConic):
        tangents_from(Ellipse(2, 1), Point2(0.5, 0.1))


def test_tangents_affine_consistency(rng):
    # tangents on (a, b) match the unscaled unit-circle solution elsewhere
    a, b = 1.7, 0.6
    e = Ellipse(a, b)
    unit = Ellipse(1, 1)
    checked = 0
    while checked < 1000:
        p = Point2(rng.uniform(-4, 4), rng.uniform(-4, 4))
        if boundary_residual(e, p) < 0.1:
            continue
        scaled = Point2(p.x / a, p.y / b)
        pairs = tangent_contacts_from(e, p)
        unit_pairs = tangent_contacts_from(unit, scaled)
        for (line, contact), (_, uc) in zip(pairs, unit_pairs):
            assert abs(line.eval_at(p)) < 1e-12
            assert tangency_residual(e, line) < 1e-12
            assert math.isclose(contact.x, a * uc.x, abs_tol=1e-10)
            assert math.isclose(contact.y, b * uc.y, abs_tol=1e-10)
        checked += 1


def test_line_ellipse_intersections_examples():
    e = Ellipse(2, 1)
    tangent = Line2.from_general(1, 0, -2)  # x = 2
    assert [p for p in line_ellipse_intersections(e, tangent)] == [Point2(2.0, 0.0)]
    axis = Line2.from_general(0, 1, 0)  # y = 0
    hits = line_ellipse_intersections(e, axis)
    assert {(round(p.x, 12), round(p.y, 12)) for p in hits} == {(2.0, 0.0), (-2.0, 0.0)}
    outside = Line2.from_general(0, 1, -2)  # y = 2
    assert line_ellipse_intersections(Ellipse(1, 1), outside) == []


def test_intersections_land_on_boundary(rng):
    e = Ellipse(1.5, 0.8)
    for _ in range(200):
        line = Line2.through(Point2(*rng.uniform(-2, 2, 2)), Point2(*rng.uniform(-2, 2, 2)))
        for p in line_ellipse_intersections(e, line):
            assert abs(boundary_residual(e, p)) < 1e-10


def test_intersections_sorted_by_parameter_angle(rng):
    e = Ellipse(2, 1)
    for _ in range(100):
        line = Line2.through(Point2(*rng.uniform(-1.5, 1.5, 2)),
                             Point2(*rng.uniform(-1.5, 1.5, 2)))
        hits = line_ellipse_intersections(e, line)
        angles = [parameter_angle(e, p) for p in hits]
        assert angles == sorted(angles)


def test_tangency_residual_examples():
    assert tangency_residual(Ellipse(2, 1), Line2.from_general(1, 0, -2)) == 0.0
    assert tangency_residual(Ellipse(1, 1), Line2.from_general(0, 1, 0)) == 1.0
