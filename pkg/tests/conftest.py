import math

import numpy as np
import pytest

from ponceletlab.centers import Triangle, make_ccw, signed_area
from ponceletlab.conics import Point2


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)


def random_triangle(rng, span: float = 2.0, min_area: float = 0.05) -> Triangle:
    """A non-degenerate CCW triangle with vertices in [-span, span]^2."""
    while True:
        v = rng.uniform(-span, span, size=(3, 2))
        tri = make_ccw(Point2(*v[0]), Point2(*v[1]), Point2(*v[2]))
        if signed_area(tri) > min_area:
            return tri


def dist(p: Point2, q: Point2) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)
