"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Tolerances are relative to max(a, b) of the family under test unless the
criterion states otherwise.  Criteria 4 and 8 are asserted exactly as
stated; parts of them are unreachable in principle (see the failure
messages), and they are left red rather than weakened.
"""

import json
import math

import numpy as np
import pytest

from ponceletlab.arrangement import build_arrangement
from ponceletlab.centers import DerivedKind, center_position, registry_listing, side_lengths, signed_area
from ponceletlab.cli import main
from ponceletlab.codec import decode, encode
from ponceletlab.conics import boundary_residual, point_at
from ponceletlab.families import make_family, porism_residual, triangle_at
from ponceletlab.fitting import conic_semi_axes, quartic_fit
from ponceletlab.locus import LocusKind, LocusRequest, classify_locus, hausdorff_distance, sweep_locus

from conftest import dist, random_triangle

CONFOCAL21 = make_family("confocal", 2, 1)


def _report(num: int, ok: bool, desc: str, detail: str = "") -> None:
    line = f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'}: {desc}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def test_criterion_01_porism_closure():
    rng = np.random.default_rng(1)
    setups = [("confocal", None), ("incircle", None), ("homothetic", None),
              ("dual", None), ("generic", 0.8)]
    worst_p, worst_b = 0.0, 0.0
    for kind, free_frac in setups:
        for a, b in ((1.5, 1.0), (2.0, 1.0)):
            family = make_family(kind, a, b, free_frac * a if free_frac else None)
            for t in rng.uniform(0, 2 * math.pi, 100):
                worst_p = max(worst_p, porism_residual(family, t))
                for v in triangle_at(family, t).vertices():
                    worst_b = max(worst_b, abs(boundary_residual(family.outer, v)))
    family = make_family("circumcircle", 1.0, 1.0)
    for t in rng.uniform(0, 2 * math.pi, 100):
        worst_p = max(worst_p, porism_residual(family, t))
        for v in triangle_at(family, t).vertices():
            worst_b = max(worst_b, abs(boundary_residual(family.outer, v)))
    _report(1, worst_p < 1e-9 and worst_b < 1e-10, "porism closure",
            f"max porism {worst_p:.2e}, max boundary {worst_b:.2e}")


def test_criterion_02_stationary_center_table():
    table = [("confocal", 9), ("incircle", 1), ("circumcircle", 3),
             ("homothetic", 2), ("dual", 4), ("excentral", 6)]
    worst = {}
    for kind, k in table:
        a, b = (1.0, 1.0) if kind == "circumcircle" else (2.0, 1.0)
        family = make_family(kind, a, b)
        tol = 1e-7 * max(a, b)
        w = 0.0
        for i in range(64):
            c = center_position(triangle_at(family, 2 * math.pi * i / 64), k)
            w = max(w, math.hypot(c.x, c.y))
        worst[(kind, k)] = (w, tol)
    bad = {key: v for key, v in worst.items() if v[0] >= v[1]}
    _report(2, not bad, "stationary-center table X_k = 9,1,3,2,4,6",
            "; ".join(f"{k[0]}→X{k[1]} {v[0]:.1e}" for k, v in worst.items()))


def test_criterion_03_four_elliptic_loci():
    results = {}
    for k in (1, 2, 3, 4):
        locus = sweep_locus(LocusRequest(family=CONFOCAL21, center=k, samples=720))
        c = locus.classification
        results[k] = (c.kind, c.conic_residual)
    ok = all(kind is LocusKind.ELLIPSE and res < 1e-7
             for kind, res in results.values())
    _report(3, ok, "X1..X4 loci over confocal (2,1) are ellipses",
            "; ".join(f"X{k}:{kind.value},{res:.1e}"
                      for k, (kind, res) in results.items()))


def test_criterion_04_feuerbach_locus_equals_caustic():
    locus = sweep_locus(LocusRequest(family=CONFOCAL21, center=11, samples=720))
    caustic = [point_at(CONFOCAL21.caustic, 2 * math.pi * j / 720) for j in range(720)]
    d = hausdorff_distance(locus.points, caustic)
    tol = 1e-6 * 2.0
    _report(4, d < tol, "X11 locus identical to the caustic (Hausdorff)",
            f"d={d:.2e} vs tol {tol:.0e}; any 720-sample polyline of this "
            f"caustic sits >= 4.2e-06 from the curve (chord sagitta near the "
            f"major vertices), so the stated tolerance is below the "
            f"discretization floor; the identity itself holds to 5e-15 "
            f"(see test_feuerbach_locus_lies_on_the_caustic)")


def test_criterion_05_symmedian_quartic():
    locus = sweep_locus(LocusRequest(family=CONFOCAL21, center=6, samples=720))
    c = locus.classification
    q = quartic_fit(locus.points)
    ok = c.kind is LocusKind.NONCONIC and c.conic_residual > 1e-4 and q < 1e-8
    _report(5, ok, "X6 over confocal (2,1) sweeps a quartic",
            f"kind={c.kind.value}, conic {c.conic_residual:.2e}, quartic {q:.2e}")


def test_criterion_06_x59_self_intersections():
    locus = sweep_locus(LocusRequest(family=CONFOCAL21, center=59, samples=720))
    n = locus.classification.self_intersections
    _report(6, locus.classification.kind is LocusKind.NONCONIC and n >= 1,
            "X59 over confocal (2,1) is self-intersected", f"{n} crossings")


def test_criterion_07_orthic_feuerbach_topology_transitions():
    outcomes = {}
    for ratio in (1.1, 1.25, 1.5, 2.0):
        family = make_family("confocal", ratio, 1.0)
        locus = sweep_locus(LocusRequest(family=family, center=11,
                                         derived=DerivedKind.ORTHIC, samples=720))
        c = locus.classification
        outcomes[ratio] = (c.kind.value, c.self_intersections)
    distinct = set(outcomes.values())
    _report(7, len(distinct) >= 2, "orthic-X11 topology transitions",
            "; ".join(f"a/b={r}:{v}" for r, v in outcomes.items()))


def test_criterion_08_degenerate_symmetry_all_centers_stationary():
    family = make_family("incircle", 1.3, 1.3)
    outcomes = {}
    for k, _name in registry_listing():
        if k > 100:
            continue  # test-registered extensions are not part of the registry contract
        try:
            locus = sweep_locus(LocusRequest(family=family, center=k, samples=64))
            outcomes[k] = locus.classification.kind.value
        except Exception as exc:
            outcomes[k] = type(exc).__name__
    bad = {k: v for k, v in outcomes.items() if v != "stationary"}
    _report(8, not bad, "incircle family with a=b pins every registry center",
            f"non-stationary: {bad or 'none'}; X11/X59 have identically "
            f"vanishing trilinears on equilateral triangles, so no position "
            f"exists for them on this family")


def test_criterion_09_medial_vertex_ellipse():
    family = make_family("homothetic", 2, 1)
    locus = sweep_locus(LocusRequest(family=family, vertex=1,
                                     derived=DerivedKind.MEDIAL, samples=720))
    c = locus.classification
    ok = c.kind is LocusKind.ELLIPSE
    detail = f"kind={c.kind.value}"
    if ok:
        sx, sy = conic_semi_axes(c.conic_coefficients)
        ok = abs(sx - 1.0) < 1e-6 and abs(sy - 0.5) < 1e-6
        detail += f", semi-axes ({sx:.8f}, {sy:.8f})"
    _report(9, ok, "medial vertex over homothetic (2,1) is the (1, 0.5) ellipse",
            detail)


def test_criterion_10_classifier_oracle():
    from ponceletlab.conics import Ellipse, Point2
    exact = [point_at(Ellipse(2, 1), 2 * math.pi * i / 720) for i in range(720)]
    ell = classify_locus(exact)
    circ = classify_locus([point_at(Ellipse(1.5, 1.5), 2 * math.pi * i / 720)
                           for i in range(720)])
    seg = classify_locus([Point2(-1 + i / 50, -0.5 + i / 100) for i in range(101)])
    dot = classify_locus([Point2(0.3, -0.7)] * 32)
    ok = (ell.kind is LocusKind.ELLIPSE and ell.conic_residual < 1e-12
          and circ.kind is LocusKind.CIRCLE
          and seg.kind is LocusKind.SEGMENT
          and dot.kind is LocusKind.STATIONARY)
    _report(10, ok, "classifier oracle on exact shapes",
            f"ellipse {ell.conic_residual:.1e}, circle={circ.kind.value}, "
            f"segment={seg.kind.value}, stationary={dot.kind.value}")


def _mc_even_odd_area(curve, n=100_000, seed=3):
    arr = np.array([(p.x, p.y) for p in curve])
    lo, hi = arr.min(axis=0), arr.max(axis=0)
    rng = np.random.default_rng(seed)
    samples = rng.uniform(lo, hi, size=(n, 2))
    x, y = arr[:, 0], arr[:, 1]
    x2, y2 = np.roll(x, -1), np.roll(y, -1)
    crossings = np.zeros(n, dtype=np.int64)
    for i0 in range(0, n, 20000):
        chunk = samples[i0:i0 + 20000]
        py, px = chunk[:, 1][:, None], chunk[:, 0][:, None]
        straddle = (y[None, :] > py) != (y2[None, :] > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            xc = x[None, :] + (py - y[None, :]) * (x2 - x)[None, :] / (y2 - y)[None, :]
        crossings[i0:i0 + 20000] += np.count_nonzero(straddle & (px < xc), axis=1)
    return (crossings % 2 == 1).mean() * float(np.prod(hi - lo))


def test_criterion_11_arrangement_soundness():
    from ponceletlab.conics import Point2
    x59 = sweep_locus(LocusRequest(family=CONFOCAL21, center=59, samples=720))
    bowtie = [Point2(-1, -1), Point2(1, 1), Point2(1, -1), Point2(-1, 1)]
    details = []
    ok = True
    for name, curve in (("X59", x59.curve()), ("figure-eight", bowtie)):
        arr = build_arrangement([curve])
        euler = (len(arr.vertices) - arr.n_edges + len(arr.faces)
                 == 1 + arr.n_components)
        face_sum = sum(f.area for f in arr.bounded_faces())
        mc = _mc_even_odd_area(curve)
        close = abs(face_sum - mc) <= 0.01 * mc
        ok = ok and euler and close
        details.append(f"{name}: euler={euler}, faces {face_sum:.5f} vs MC {mc:.5f}")
    _report(11, ok, "arrangement Euler formula and even-odd area", "; ".join(details))


def test_criterion_12_determinism(tmp_path):
    flags = ["render", "--family", "confocal", "-a", "2", "-b", "1",
             "--center", "59", "--style", "region_fill", "--seed", "1234",
             "--samples", "360"]
    out1, out2 = tmp_path / "r1.svg", tmp_path / "r2.svg"
    assert main([*flags, "-o", str(out1)]) == 0
    assert main([*flags, "-o", str(out2)]) == 0
    identical = out1.read_bytes() == out2.read_bytes()
    # round-trip 1000 pseudo-random states
    import random as _random
    _random.seed(99)
    ok_rt = True
    from ponceletlab.codec import ExperimentState
    from ponceletlab.families import FamilyKind
    from ponceletlab.render import StyleMode
    kinds = [FamilyKind.CONFOCAL, FamilyKind.INCIRCLE, FamilyKind.HOMOTHETIC,
             FamilyKind.DUAL, FamilyKind.EXCENTRAL, FamilyKind.CIRCUMCIRCLE,
             FamilyKind.GENERIC]
    registry = [k for k, _ in registry_listing() if k <= 100]
    for i in range(1000):
        kind = _random.choice(kinds)
        a = _random.uniform(0.2, 8.0)
        b = a if kind is FamilyKind.CIRCUMCIRCLE else _random.uniform(0.2, 8.0)
        if kind is FamilyKind.GENERIC:
            free = _random.uniform(0.05, 0.95) * a
        elif kind is FamilyKind.CIRCUMCIRCLE and _random.random() < 0.5:
            free = _random.uniform(0.05, 0.95)
        else:
            free = None
        if _random.random() < 0.5:
            center, vertex = _random.choice(registry), None
        else:
            center, vertex = None, _random.choice((1, 2, 3))
        state = ExperimentState(
            family_kind=kind, a=a, b=b, free=free, center=center, vertex=vertex,
            derived=_random.choice(list(DerivedKind)),
            samples=_random.randint(16, 65535),
            style_mode=_random.choice(list(StyleMode)),
            palette_seed=_random.getrandbits(64),
            speed=_random.uniform(0.01, 50.0))
        if decode(encode(state)) != state:
            ok_rt = False
            break
    _report(12, identical and ok_rt, "render determinism and codec round-trips",
            f"byte-identical={identical}, 1000 round-trips={'ok' if ok_rt else 'FAIL'}")


def test_criterion_13_euler_line_and_feuerbach():
    rng = np.random.default_rng(13)
    worst_ratio, worst_feu = 0.0, 0.0
    for _ in range(100):
        tri = random_triangle(rng)
        x2 = center_position(tri, 2)
        x3 = center_position(tri, 3)
        x4 = center_position(tri, 4)
        worst_ratio = max(worst_ratio, abs(dist(x2, x3) / dist(x3, x4) - 1 / 3))
        s = side_lengths(tri)
        inradius = signed_area(tri) / (0.5 * (s.s1 + s.s2 + s.s3))
        worst_feu = max(worst_feu,
                        abs(dist(center_position(tri, 1), center_position(tri, 11))
                            - inradius))
    _report(13, worst_ratio < 1e-10 and worst_feu < 1e-10,
            "Euler line ratio and Feuerbach-on-incircle",
            f"ratio err {worst_ratio:.1e}, Feuerbach err {worst_feu:.1e}")
