"""Sweep a tracked point over a Poncelet family and classify the swept curve.

The classifier runs a fixed decision ladder: stationary (bounding box tiny
against the family scale), segment (best-fit line), conic (algebraic fit with
``B^2 - 4AC`` telling ellipses from the rest), and otherwise nonconic, in
which case the quartic residual and the polyline self-intersections are
recorded.  All residual thresholds are normalized so classification is
size-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .centers import DerivedKind, center_position, derived_triangle
from .conics import TWO_PI, Point2
from .errors import (
    AllSamplesDegenerate,
    BadRequest,
    CenterAtInfinity,
    DegenerateDerived,
    DegenerateTriangle,
    InsufficientPoints,
)
from .families import FamilyKind, FamilySpec, triangle_at
from .conics import parameter_angle
from .fitting import conic_fit, quartic_fit

ELLIPSE_TOL = 1e-7
STATIONARY_TOL = 1e-7
SEGMENT_TOL = 1e-9
CIRCLE_TOL = 1e-7


class LocusKind(str, Enum):
    STATIONARY = "stationary"
    SEGMENT = "segment"
    CIRCLE = "circle"
    ELLIPSE = "ellipse"
    NONCONIC = "nonconic"


@dataclass(frozen=True)
class LocusRequest:
    family: FamilySpec
    center: Optional[int] = None
    vertex: Optional[int] = None
    derived: DerivedKind = DerivedKind.REFERENCE
    samples: int = 720

    def __post_init__(self) -> None:
        if (self.center is None) == (self.vertex is None):
            raise BadRequest("exactly one of center or vertex must be set")
        if self.vertex is not None and self.vertex not in (1, 2, 3):
            raise BadRequest(f"vertex index must be 1, 2 or 3, got {self.vertex}")
        if self.samples < 16:
            raise BadRequest(f"need at least 16 samples, got {self.samples}")


@dataclass(frozen=True)
class Classification:
    kind: LocusKind
    conic_residual: float
    quartic_residual: float
    self_intersections: int
    conic_coefficients: Optional[tuple[float, ...]] = None


@dataclass(frozen=True)
class Locus:
    points: list[Point2]
    classification: Classification
    scale: float  # bbox diagonal
    dropped_samples: int = 0
    requested_samples: int = field(default=0, compare=False)
    # One period of the swept curve (the full sweep retraces it three times);
    # downstream geometry (region filling, crossing counts) works on this.
    cover_points: list[Point2] = field(default_factory=list, compare=False, repr=False)

    def curve(self) -> list[Point2]:
        return self.cover_points if self.cover_points else self.points


def _bbox_diagonal(arr: np.ndarray) -> float:
    spans = arr.max(axis=0) - arr.min(axis=0)
    return float(math.hypot(spans[0], spans[1]))


def poncelet_period(family: FamilySpec) -> float:
    """Parameter advance after which the vertex set repeats: the parameter
    angle of v2 of the triangle at t = 0.

    A full 2pi sweep covers the tracked curve three times (the triangle at
    t, at this shift, and at its square share one vertex set); one period
    covers it exactly once.
    """
    base = family.base if family.kind is FamilyKind.EXCENTRAL else family
    return parameter_angle(base.outer, triangle_at(base, 0.0).v2)


def iter_samples(req: LocusRequest, t_values=None):
    """Yield (t, point-or-None) for each sample; None marks a degenerate drop."""
    if t_values is None:
        t_values = (TWO_PI * i / req.samples for i in range(req.samples))
    for t in t_values:
        try:
            tri = derived_triangle(triangle_at(req.family, t), req.derived)
            if req.center is not None:
                p = center_position(tri, req.center)
            else:
                p = tri.vertices()[req.vertex - 1]
        except (DegenerateTriangle, DegenerateDerived, CenterAtInfinity):
            yield t, None
            continue
        yield t, p


def _sample_sweep(req: LocusRequest, t_values) -> tuple[list[Point2], int]:
    pts: list[Point2] = []
    dropped = 0
    for _, p in iter_samples(req, t_values):
        if p is None:
            dropped += 1
        else:
            pts.append(p)
    return pts, dropped


def sweep_locus(req: LocusRequest) -> Locus:
    """Sample the tracked point at uniform parameter angles and classify.

    Samples whose (derived) triangle is degenerate are dropped, not
    interpolated; the drop count is reported on the result.  Self-crossings
    are counted on a one-period resample of the same curve: the full sweep
    retraces the curve three times, and the retraced polylines weave through
    each other at the sampling scale, which would drown the geometric
    crossings in spurious ones.
    """
    pts, dropped = _sample_sweep(
        req, (TWO_PI * i / req.samples for i in range(req.samples)))
    if not pts:
        raise AllSamplesDegenerate("every sample of the sweep was degenerate")
    period = poncelet_period(req.family)
    single_cover, _ = _sample_sweep(
        req, (period * i / req.samples for i in range(req.samples)))
    arr = np.array([(p.x, p.y) for p in pts])
    classification = classify_locus(pts, scale=req.family.scale,
                                    crossing_points=single_cover)
    return Locus(points=pts, classification=classification,
                 scale=_bbox_diagonal(arr), dropped_samples=dropped,
                 requested_samples=req.samples, cover_points=single_cover)


def classify_locus(points, scale: float | None = None,
                   crossing_points=None) -> Classification:
    """Decision ladder over a sampled closed curve.

    `scale` is the reference length for the stationary test (the family scale
    when the points come from a sweep); it defaults to the largest distance of
    the points from the origin.  `crossing_points`, when given, is the
    polyline on which self-intersections are counted (a one-period resample
    for swept loci); fits always run on `points`.
    """
    arr = np.asarray([(p.x, p.y) for p in points], dtype=float) \
        if not isinstance(points, np.ndarray) else np.asarray(points, dtype=float)
    if len(arr) < 16:
        raise InsufficientPoints(f"classification needs >= 16 points, got {len(arr)}")
    diag = _bbox_diagonal(arr)
    if scale is None:
        scale = max(float(np.linalg.norm(arr, axis=1).max()), 1e-300)
    if diag < STATIONARY_TOL * scale:
        return Classification(LocusKind.STATIONARY, 0.0, 0.0, 0)

    centered = arr - arr.mean(axis=0)
    line_rms = float(np.linalg.svd(centered, compute_uv=False)[-1]) / math.sqrt(len(arr))
    if line_rms < SEGMENT_TOL * diag:
        return Classification(LocusKind.SEGMENT, 0.0, 0.0, 0)

    coeffs, conic_residual = conic_fit(arr)
    quartic_residual = quartic_fit(arr)
    a, b, c = float(coeffs[0]), float(coeffs[1]), float(coeffs[2])
    if conic_residual < ELLIPSE_TOL and b * b - 4.0 * a * c < 0.0:
        norm = float(np.linalg.norm(coeffs))
        is_circle = abs(a - c) < CIRCLE_TOL * norm and abs(b) < CIRCLE_TOL * norm
        kind = LocusKind.CIRCLE if is_circle else LocusKind.ELLIPSE
        return Classification(kind, conic_residual, quartic_residual, 0,
                              tuple(float(v) for v in coeffs))
    if crossing_points is not None and len(crossing_points) >= 4:
        crossings = self_intersections(crossing_points)
    else:
        crossings = self_intersections(arr)
    return Classification(LocusKind.NONCONIC, conic_residual, quartic_residual,
                          len(crossings), tuple(float(v) for v in coeffs))


def _segments(arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return arr, np.roll(arr, -1, axis=0)


def self_intersections(points) -> list[tuple[Point2, tuple[int, int]]]:
    """Transverse intersections between non-adjacent segments of the closed
    polyline, deduplicated within 1e-9 of the bounding-box diagonal.

    Brute force over candidate pairs from a uniform-grid broad phase.
    """
    arr = np.asarray([(p.x, p.y) for p in points], dtype=float) \
        if not isinstance(points, np.ndarray) else np.asarray(points, dtype=float)
    n = len(arr)
    if n < 4:
        raise InsufficientPoints("need at least 4 points for self-intersection")
    diag = _bbox_diagonal(arr)
    if diag == 0.0:
        return []
    starts, ends = _segments(arr)
    lo = np.minimum(starts, ends)
    hi = np.maximum(starts, ends)
    cell = diag / 64.0
    grid: dict[tuple[int, int], list[int]] = {}
    origin = arr.min(axis=0)
    for i in range(n):
        ix0, iy0 = ((lo[i] - origin) // cell).astype(int)
        ix1, iy1 = ((hi[i] - origin) // cell).astype(int)
        for ix in range(ix0, ix1 + 1):
            for iy in range(iy0, iy1 + 1):
                grid.setdefault((ix, iy), []).append(i)
    candidates = set()
    for bucket in grid.values():
        for ai in range(len(bucket)):
            for bi in range(ai + 1, len(bucket)):
                i, j = bucket[ai], bucket[bi]
                if i > j:
                    i, j = j, i
                gap = (j - i) % n
                if gap <= 1 or gap == n - 1:
                    continue  # adjacent segments share an endpoint
                candidates.add((i, j))
    found: list[tuple[Point2, tuple[int, int]]] = []
    for i, j in sorted(candidates):
        hit = _segment_crossing(starts[i], ends[i], starts[j], ends[j])
        if hit is not None:
            found.append((Point2(hit[0], hit[1]), (i, j)))
    return _dedupe_crossings(found, 1e-9 * diag)


def _segment_crossing(p1, p2, q1, q2):
    r = p2 - p1
    s = q2 - q1
    denom = r[0] * s[1] - r[1] * s[0]
    if denom == 0.0:
        return None
    qp = q1 - p1
    t = (qp[0] * s[1] - qp[1] * s[0]) / denom
    u = (qp[0] * r[1] - qp[1] * r[0]) / denom
    if 0.0 < t < 1.0 and 0.0 < u < 1.0:
        return p1 + t * r
    return None


def _dedupe_crossings(found, tol: float):
    kept: list[tuple[Point2, tuple[int, int]]] = []
    for p, pair in found:
        if all((p.x - q.x) ** 2 + (p.y - q.y) ** 2 > tol * tol for q, _ in kept):
            kept.append((p, pair))
    return kept


def hausdorff_distance(a_points, b_points) -> float:
    """Symmetric Hausdorff distance between two closed polylines,
    point-to-segment based."""
    a = np.asarray([(p.x, p.y) for p in a_points], dtype=float) \
        if not isinstance(a_points, np.ndarray) else np.asarray(a_points, dtype=float)
    b = np.asarray([(p.x, p.y) for p in b_points], dtype=float) \
        if not isinstance(b_points, np.ndarray) else np.asarray(b_points, dtype=float)
    if len(a) == 0 or len(b) == 0:
        raise InsufficientPoints("hausdorff distance of an empty polyline")
    return max(_directed_hausdorff(a, b), _directed_hausdorff(b, a))


def _directed_hausdorff(pts: np.ndarray, poly: np.ndarray) -> float:
    starts, ends = _segments(poly)
    seg = ends - starts  # (m, 2)
    seg_len2 = (seg ** 2).sum(axis=1)
    seg_len2[seg_len2 == 0.0] = 1.0
    # (n, m, 2) offsets from every segment start to every point
    w = pts[:, None, :] - starts[None, :, :]
    t = (w * seg[None, :, :]).sum(axis=2) / seg_len2[None, :]
    t = np.clip(t, 0.0, 1.0)
    closest = starts[None, :, :] + t[:, :, None] * seg[None, :, :]
    d = np.sqrt(((pts[:, None, :] - closest) ** 2).sum(axis=2))
    return float(d.min(axis=1).max())
