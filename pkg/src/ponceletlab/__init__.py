"""Poncelet triangle families, triangle-center loci, classification and rendering."""

from .arrangement import Arrangement, Face, build_arrangement, face_containment
from .centers import (
    DerivedKind,
    Triangle,
    center_position,
    derived_triangle,
    register_center,
    registry_listing,
    side_lengths,
)
from .codec import ExperimentState, decode, default_state, encode
from .conics import (
    Ellipse,
    Line2,
    Point2,
    boundary_residual,
    line_ellipse_intersections,
    point_at,
    tangency_residual,
    tangents_from,
)
from .families import (
    FamilyKind,
    FamilySpec,
    closure_defect,
    make_family,
    porism_residual,
    triangle_at,
)
from .fitting import conic_fit, conic_semi_axes, quartic_fit
from .locus import (
    Classification,
    Locus,
    LocusKind,
    LocusRequest,
    classify_locus,
    hausdorff_distance,
    self_intersections,
    sweep_locus,
)
from .render import Scene, Style, StyleMode, export_frames, pastel_palette, render_scene

__version__ = "0.1.0"
