"""Noded planar subdivision of closed polylines with face extraction.

Curves are noded at every self- and pairwise intersection, endpoints are
snapped within ``1e-9`` of the global bounding-box diagonal, and a half-edge
structure is walked to extract faces.  Cycles with positive signed area are
bounded faces; each connected component contributes one negative contour
cycle, which either bounds the unbounded region or punches a hole into the
smallest bounded face of another component that contains it.

Double precision plus snapping is the exactness strategy: the inputs here are
smooth sampled loci, not adversarial degeneracies, so near-tangential
crossings within tolerance merge rather than producing slivers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .conics import Point2
from .errors import ArrangementError

SNAP_REL = 1e-9
GRID_CELLS = 64


@dataclass
class HalfEdge:
    origin: int
    twin: int
    next: int = -1
    face: int = -1


@dataclass
class Face:
    boundary: list[int]          # vertex-index loop; CCW for bounded faces
    is_outer: bool
    area: float
    holes: list[list[int]] = field(default_factory=list)


@dataclass
class Arrangement:
    vertices: list[Point2]
    half_edges: list[HalfEdge]
    faces: list[Face]
    n_components: int

    @property
    def n_edges(self) -> int:
        return len(self.half_edges) // 2

    def loop_points(self, loop: list[int]) -> np.ndarray:
        return np.array([(self.vertices[i].x, self.vertices[i].y) for i in loop])

    def bounded_faces(self) -> list[Face]:
        return [f for f in self.faces if not f.is_outer]


def _as_arrays(curves) -> list[np.ndarray]:
    out = []
    for curve in curves:
        if isinstance(curve, np.ndarray):
            arr = np.asarray(curve, dtype=float)
        else:
            arr = np.array([(p.x, p.y) for p in curve], dtype=float)
        if len(arr) < 3:
            raise ValueError("each closed curve needs at least 3 points")
        if not np.all(np.isfinite(arr)):
            raise ValueError("curve contains non-finite coordinates")
        out.append(arr)
    return out


def build_arrangement(curves) -> Arrangement:
    """Node the closed polylines and extract the face structure.

    The Euler relation V - E + F = 1 + C is verified after construction and
    an ArrangementError is raised if it fails.
    """
    arrays = _as_arrays(curves)
    if not arrays:
        return Arrangement([], [], [Face([], True, 0.0)], 0)
    allpts = np.vstack(arrays)
    spans = allpts.max(axis=0) - allpts.min(axis=0)
    diag = float(math.hypot(spans[0], spans[1]))
    if diag == 0.0:
        raise ValueError("curves collapse to a single point")
    snap_tol = SNAP_REL * diag

    segments = []
    for arr in arrays:
        for i in range(len(arr)):
            a, b = arr[i], arr[(i + 1) % len(arr)]
            if math.hypot(b[0] - a[0], b[1] - a[1]) > snap_tol:
                segments.append((a, b))
    noded = _node_segments(segments, diag, snap_tol)
    vertices, edges = _snap_and_dedupe(noded, snap_tol)
    return _build_dcel(vertices, edges)


def _candidate_pairs(segments, diag: float):
    cell = diag / GRID_CELLS
    lo = np.array([np.minimum(a, b) for a, b in segments])
    hi = np.array([np.maximum(a, b) for a, b in segments])
    origin = lo.min(axis=0)
    grid: dict[tuple[int, int], list[int]] = {}
    for i in range(len(segments)):
        ix0, iy0 = ((lo[i] - origin) // cell).astype(int)
        ix1, iy1 = ((hi[i] - origin) // cell).astype(int)
        for ix in range(ix0, ix1 + 1):
            for iy in range(iy0, iy1 + 1):
                grid.setdefault((ix, iy), []).append(i)
    pairs = set()
    for bucket in grid.values():
        for ai in range(len(bucket)):
            for bi in range(ai + 1, len(bucket)):
                pairs.add((bucket[ai], bucket[bi]))
    return sorted(pairs)


def _node_segments(segments, diag: float, snap_tol: float):
    """Split segments at every pairwise intersection (T-junctions included)."""
    cuts: list[list[float]] = [[] for _ in segments]
    for i, j in _candidate_pairs(segments, diag):
        a1, a2 = segments[i]
        b1, b2 = segments[j]
        r = a2 - a1
        s = b2 - b1
        denom = r[0] * s[1] - r[1] * s[0]
        if abs(denom) <= 1e-14 * (abs(r[0] * s[1]) + abs(r[1] * s[0]) + 1e-300):
            continue  # parallel or collinear: endpoint snapping handles touches
        qp = b1 - a1
        t = (qp[0] * s[1] - qp[1] * s[0]) / denom
        u = (qp[0] * r[1] - qp[1] * r[0]) / denom
        len_r = math.hypot(r[0], r[1])
        len_s = math.hypot(s[0], s[1])
        et, eu = snap_tol / len_r, snap_tol / len_s
        if -et <= t <= 1.0 + et and -eu <= u <= 1.0 + eu:
            if et < t < 1.0 - et:
                cuts[i].append(t)
            if eu < u < 1.0 - eu:
                cuts[j].append(u)
    out = []
    for idx, (a, b) in enumerate(segments):
        params = sorted(set([0.0, 1.0] + cuts[idx]))
        merged = [params[0]]
        min_gap = snap_tol / math.hypot(b[0] - a[0], b[1] - a[1])
        for p in params[1:]:
            if p - merged[-1] >= min_gap:
                merged.append(p)
        if merged[-1] != 1.0:
            merged[-1] = 1.0
        for p0, p1 in zip(merged, merged[1:]):
            out.append((a + p0 * (b - a), a + p1 * (b - a)))
    return out


def _snap_and_dedupe(segments, snap_tol: float):
    """Merge endpoints within snap_tol into canonical vertices; dedupe edges."""
    cell = snap_tol * 2.0
    buckets: dict[tuple[int, int], list[int]] = {}
    coords: list[tuple[float, float]] = []

    def vertex_for(p) -> int:
        cx, cy = int(math.floor(p[0] / cell)), int(math.floor(p[1] / cell))
        for ix in (cx - 1, cx, cx + 1):
            for iy in (cy - 1, cy, cy + 1):
                for vid in buckets.get((ix, iy), ()):
                    qx, qy = coords[vid]
                    if (p[0] - qx) ** 2 + (p[1] - qy) ** 2 <= snap_tol * snap_tol:
                        return vid
        vid = len(coords)
        coords.append((float(p[0]), float(p[1])))
        buckets.setdefault((cx, cy), []).append(vid)
        return vid

    edges = set()
    for a, b in segments:
        u, v = vertex_for(a), vertex_for(b)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    vertices = [Point2(x, y) for x, y in coords]
    return vertices, sorted(edges)


def _loop_area(coords: np.ndarray) -> float:
    x, y = coords[:, 0], coords[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def point_in_loop(coords: np.ndarray, px: float, py: float) -> bool:
    """Even-odd ray crossing test against a closed vertex loop."""
    x, y = coords[:, 0], coords[:, 1]
    x2, y2 = np.roll(x, -1), np.roll(y, -1)
    straddle = (y > py) != (y2 > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        xcross = x + (py - y) * (x2 - x) / (y2 - y)
    hits = straddle & (px < xcross)
    return bool(np.count_nonzero(hits) % 2)


def _build_dcel(vertices: list[Point2], edges: list[tuple[int, int]]) -> Arrangement:
    half_edges: list[HalfEdge] = []
    for u, v in edges:
        h = len(half_edges)
        half_edges.append(HalfEdge(origin=u, twin=h + 1))
        half_edges.append(HalfEdge(origin=v, twin=h))

    outgoing: dict[int, list[int]] = {}
    for idx, he in enumerate(half_edges):
        outgoing.setdefault(he.origin, []).append(idx)

    def _angle(idx: int) -> float:
        he = half_edges[idx]
        o = vertices[he.origin]
        h = vertices[half_edges[he.twin].origin]
        return math.atan2(h.y - o.y, h.x - o.x)

    ring_pos: dict[int, int] = {}
    for v, ring in outgoing.items():
        ring.sort(key=_angle)
        for pos, idx in enumerate(ring):
            ring_pos[idx] = pos

    # next(h): the cyclic predecessor of twin(h) in CCW order around h's head,
    # which walks every face cycle with its interior on the left.
    for idx, he in enumerate(half_edges):
        tw = he.twin
        ring = outgoing[half_edges[tw].origin]
        he.next = ring[(ring_pos[tw] - 1) % len(ring)]

    cycles: list[list[int]] = []
    seen = [False] * len(half_edges)
    for start in range(len(half_edges)):
        if seen[start]:
            continue
        walk = []
        cur = start
        while not seen[cur]:
            seen[cur] = True
            walk.append(cur)
            cur = half_edges[cur].next
        cycles.append(walk)

    comp = _vertex_components(len(vertices), edges)
    n_components = len({comp[u] for u, _ in edges} | {comp[v] for _, v in edges}
                       | set(comp[v] for v in range(len(vertices))))

    scale = max((max(abs(p.x), abs(p.y)) for p in vertices), default=1.0)
    area_floor = SNAP_REL * scale * scale  # slivers below snapping merge away
    positive: list[tuple[float, list[int], list[int]]] = []  # area, loop, walk
    contours: list[tuple[float, list[int], list[int]]] = []
    for walk in cycles:
        loop = [half_edges[h].origin for h in walk]
        coords = np.array([(vertices[i].x, vertices[i].y) for i in loop])
        area = _loop_area(coords)
        if area > area_floor:
            positive.append((area, loop, walk))
        else:
            contours.append((area, loop, walk))

    faces: list[Face] = [Face([], True, 0.0)]
    order = sorted(range(len(positive)),
                   key=lambda i: (-positive[i][0],
                                  min((vertices[v].x, vertices[v].y)
                                      for v in positive[i][1])))
    walk_of_face: list[list[int]] = [[]]
    for i in order:
        area, loop, walk = positive[i]
        faces.append(Face(boundary=loop, is_outer=False, area=area))
        walk_of_face.append(walk)

    # Assign each component's contour: hole of the smallest bounded face of a
    # different component that strictly contains it, or outer.
    for area, loop, walk in contours:
        rep = min(loop, key=lambda v: (vertices[v].y, vertices[v].x))
        rx, ry = vertices[rep].x, vertices[rep].y
        rep_comp = comp[rep]
        best = 0
        best_area = math.inf
        for fi, face in enumerate(faces):
            if face.is_outer or comp[face.boundary[0]] == rep_comp:
                continue
            if face.area < best_area and point_in_loop(
                    np.array([(vertices[v].x, vertices[v].y)
                              for v in face.boundary]), rx, ry):
                best, best_area = fi, face.area
        faces[best].holes.append(loop)
        if best != 0:
            faces[best].area -= abs(area)
        for h in walk:
            half_edges[h].face = best
    for fi, walk in enumerate(walk_of_face):
        for h in walk:
            half_edges[h].face = fi

    arr = Arrangement(vertices, half_edges, faces, n_components)
    _verify_euler(arr, len(edges))
    return arr


def _vertex_components(n: int, edges) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return [find(x) for x in range(n)]


def _verify_euler(arr: Arrangement, n_edges: int) -> None:
    v, f, c = len(arr.vertices), len(arr.faces), arr.n_components
    if v - n_edges + f != 1 + c:
        raise ArrangementError(
            f"Euler check failed: V={v} E={n_edges} F={f} C={c}")


def face_containment(arr: Arrangement) -> dict[int, int]:
    """Parent map: each bounded face to its minimal enclosing face (0 = outer).

    Containment is decided by ray-casting a representative interior point of
    the face against the other faces' boundary loops.
    """
    parents: dict[int, int] = {}
    for fi, face in enumerate(arr.faces):
        if face.is_outer:
            continue
        rep = _face_interior_point(arr, face)
        best, best_area = 0, math.inf
        for gi, other in enumerate(arr.faces):
            if gi == fi or other.is_outer or other.area < face.area:
                continue
            if other.area < best_area and point_in_loop(
                    arr.loop_points(other.boundary), rep[0], rep[1]):
                best, best_area = gi, other.area
        parents[fi] = best
    return parents


def _face_interior_point(arr: Arrangement, face: Face) -> tuple[float, float]:
    """A point strictly inside the face (inside its loop, outside its holes).

    Starts from the angular bisector at a convex corner of the boundary walk
    and shrinks toward the corner until the even-odd tests pass; consecutive
    boundary edges are angularly adjacent in the half-edge ring, so the
    wedge near the corner belongs to this face.
    """
    loop = face.boundary
    coords = arr.loop_points(loop)
    n = len(loop)
    order = sorted(range(n), key=lambda k: (coords[k][1], coords[k][0]))
    for k in order:
        v = coords[k]
        back = coords[(k - 1) % n] - v
        out = coords[(k + 1) % n] - v
        ang_out = math.atan2(out[1], out[0])
        sweep = (math.atan2(back[1], back[0]) - ang_out) % (2.0 * math.pi)
        if sweep == 0.0:
            continue
        theta = ang_out + 0.5 * sweep
        r = 0.25 * min(math.hypot(*back), math.hypot(*out))
        for _ in range(60):
            px, py = v[0] + r * math.cos(theta), v[1] + r * math.sin(theta)
            if point_in_loop(coords, px, py) and not any(
                    point_in_loop(arr.loop_points(h), px, py) for h in face.holes):
                return (px, py)
            r *= 0.5
    raise ArrangementError("could not locate an interior point of a face")
