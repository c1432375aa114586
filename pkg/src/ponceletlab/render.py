"""Deterministic SVG rendering of conics, triangles, loci and filled regions.

Three styles: thin wireframe on white, thick strokes on a dark background,
and region fill, where the faces of a planar arrangement are painted with a
seeded pastel palette.  All numbers are written with six decimal places so
identical scenes yield byte-identical documents.
"""

from __future__ import annotations

import colorsys
import random
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .arrangement import Arrangement, build_arrangement
from .centers import Triangle, derived_triangle
from .conics import TWO_PI, Ellipse
from .errors import EmptyScene
from .families import FamilySpec, triangle_at
from .locus import LocusKind, LocusRequest, sweep_locus

DARK_BACKGROUND = "#101018"
WIREFRAME_STROKE = 1.5
DARK_THICK_STROKE = 6.0

# Saturated cycle for wireframe locus strokes (pastels are for fills).
LOCUS_STROKE_CYCLE = ("#b03434", "#2f7d3a", "#2b4fc2", "#b07a20", "#7d2f8f", "#18838f")


class StyleMode(str, Enum):
    WIREFRAME = "wireframe"
    DARK_THICK = "dark_thick"
    REGION_FILL = "region_fill"


@dataclass(frozen=True)
class Style:
    mode: StyleMode = StyleMode.WIREFRAME
    stroke_width: Optional[float] = None
    background: Optional[str] = None
    palette_seed: int = 0

    def resolved_stroke(self) -> float:
        if self.stroke_width is not None:
            if self.stroke_width <= 0:
                raise ValueError("stroke width must be positive")
            return self.stroke_width
        return DARK_THICK_STROKE if self.mode is StyleMode.DARK_THICK else WIREFRAME_STROKE

    def resolved_background(self) -> str:
        if self.background is not None:
            return self.background
        return "#ffffff" if self.mode is StyleMode.WIREFRAME else DARK_BACKGROUND


@dataclass(frozen=True)
class Scene:
    outer: Optional[Ellipse] = None
    caustic: Optional[Ellipse] = None
    triangle: Optional[Triangle] = None
    loci: tuple = ()
    arrangement: Optional[Arrangement] = None


def pastel_palette(n: int, seed: int) -> list[str]:
    """n pastel colors from a seeded generator: hue uniform on [0, 360),
    saturation in [35%, 55%], lightness in [70%, 85%]."""
    if n < 1:
        raise ValueError("palette needs at least one color")
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        h = rng.random()
        s = 0.35 + 0.20 * rng.random()
        light = 0.70 + 0.15 * rng.random()
        r, g, b = colorsys.hls_to_rgb(h, light, s)
        out.append("#%02x%02x%02x" % (round(r * 255), round(g * 255), round(b * 255)))
    return out


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _scene_bbox(scene: Scene) -> tuple[float, float, float, float]:
    xs: list[float] = []
    ys: list[float] = []
    for e in (scene.outer, scene.caustic):
        if e is not None:
            xs += [-e.semi_axis_x, e.semi_axis_x]
            ys += [-e.semi_axis_y, e.semi_axis_y]
    if scene.triangle is not None:
        for v in scene.triangle.vertices():
            xs.append(v.x)
            ys.append(v.y)
    for locus in scene.loci:
        for p in locus.points:
            xs.append(p.x)
            ys.append(p.y)
    if scene.arrangement is not None:
        for v in scene.arrangement.vertices:
            xs.append(v.x)
            ys.append(v.y)
    if not xs:
        raise EmptyScene("scene has no drawable element")
    return min(xs), min(ys), max(xs), max(ys)


def _viewbox(scene: Scene, width: int, height: int) -> tuple[float, float, float, float]:
    x0, y0, x1, y1 = _scene_bbox(scene)
    span_x, span_y = x1 - x0, y1 - y0
    pad = 0.05 * max(span_x, span_y, 1e-9)
    x0, x1 = x0 - pad, x1 + pad
    y0, y1 = y0 - pad, y1 + pad
    span_x, span_y = x1 - x0, y1 - y0
    target = width / height
    if span_x / span_y < target:  # widen
        extra = target * span_y - span_x
        x0, x1 = x0 - extra / 2, x1 + extra / 2
    else:  # heighten
        extra = span_x / target - span_y
        y0, y1 = y0 - extra / 2, y1 + extra / 2
    return x0, y0, x1, y1


def _xy(p) -> tuple[float, float]:
    if hasattr(p, "x"):
        return p.x, p.y
    return float(p[0]), float(p[1])


def _polyline_path(points, close: bool = True) -> str:
    cmds = []
    for i, p in enumerate(points):
        x, y = _xy(p)
        cmds.append(f"{'M' if i == 0 else 'L'}{_fmt(x)} {_fmt(-y)}")
    if close:
        cmds.append("Z")
    return " ".join(cmds)


def _ellipse_element(e: Ellipse, stroke: str, sw: float) -> str:
    return (f'<ellipse class="conic" cx="0.000000" cy="0.000000" '
            f'rx="{_fmt(e.semi_axis_x)}" ry="{_fmt(e.semi_axis_y)}" '
            f'fill="none" stroke="{stroke}" stroke-width="{_fmt(sw)}"/>')


def render_scene(scene: Scene, style: Style, width: int = 800, height: int = 800) -> str:
    """Well-formed SVG 1.1 text for the scene; byte-stable for equal inputs."""
    x0, y0, x1, y1 = _viewbox(scene, width, height)
    vb_w, vb_h = x1 - x0, y1 - y0
    sw = style.resolved_stroke() * vb_w / width
    background = style.resolved_background()
    dark = style.mode is not StyleMode.WIREFRAME

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="{_fmt(x0)} {_fmt(-y1)} {_fmt(vb_w)} {_fmt(vb_h)}">',
        f'<rect class="background" x="{_fmt(x0)}" y="{_fmt(-y1)}" '
        f'width="{_fmt(vb_w)}" height="{_fmt(vb_h)}" fill="{background}"/>',
    ]

    if style.mode is StyleMode.REGION_FILL:
        arrangement = scene.arrangement
        if arrangement is None:
            # Stationary loci enclose no region; fill whatever actually spans
            # one, using each locus's single-cover curve.
            curves = []
            for locus in scene.loci:
                pts = locus.curve() if hasattr(locus, "curve") else locus.points
                cls = getattr(locus, "classification", None)
                if cls is not None and cls.kind is LocusKind.STATIONARY:
                    continue
                top = max(max(abs(x), abs(y)) for x, y in map(_xy, pts))
                if len(pts) >= 3 and locus.scale > 1e-9 * (1.0 + top):
                    curves.append(pts)
            arrangement = build_arrangement(curves)
        bounded = arrangement.bounded_faces()
        if bounded:
            colors = pastel_palette(len(bounded), style.palette_seed)
            for face, color in zip(bounded, colors):
                loops = [arrangement.loop_points(face.boundary)]
                loops += [arrangement.loop_points(h) for h in face.holes]
                d = " ".join(_polyline_path(lp) for lp in loops)
                parts.append(f'<path class="face" d="{d}" fill="{color}" '
                             f'fill-rule="evenodd"/>')

    conic_stroke = "#383848" if dark else "#202020"
    caustic_stroke = "#383848" if dark else "#606060"
    conic_sw = sw if style.mode is StyleMode.WIREFRAME else WIREFRAME_STROKE * vb_w / width
    if scene.outer is not None:
        parts.append(_ellipse_element(scene.outer, conic_stroke, conic_sw))
    if scene.caustic is not None:
        parts.append(_ellipse_element(scene.caustic, caustic_stroke, conic_sw))

    if style.mode is not StyleMode.REGION_FILL:
        locus_colors = (pastel_palette(len(scene.loci), style.palette_seed)
                        if dark and scene.loci else LOCUS_STROKE_CYCLE)
        for i, locus in enumerate(scene.loci):
            color = locus_colors[i % len(locus_colors)]
            parts.append(f'<path class="locus" '
                         f'd="{_polyline_path(locus.points)}" fill="none" '
                         f'stroke="{color}" stroke-width="{_fmt(sw)}" '
                         f'stroke-linejoin="round"/>')

    if scene.triangle is not None:
        stroke = "#9098b0" if dark else "#808080"
        parts.append(f'<path class="triangle" '
                     f'd="{_polyline_path(scene.triangle.vertices())}" fill="none" '
                     f'stroke="{stroke}" stroke-width="{_fmt(conic_sw)}"/>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def export_frames(family: FamilySpec, req: LocusRequest, style: Style,
                  frames: int, width: int = 800, height: int = 800) -> list[str]:
    """One SVG per frame: the full locus plus the tracked triangle at
    t = 2*pi*i/frames."""
    if frames < 1:
        raise ValueError("need at least one frame")
    locus = sweep_locus(req)
    out = []
    for i in range(frames):
        t = TWO_PI * i / frames
        tri = derived_triangle(triangle_at(family, t), req.derived)
        scene = Scene(outer=family.outer, caustic=family.caustic,
                      triangle=tri, loci=(locus,))
        out.append(render_scene(scene, style, width, height))
    return out
