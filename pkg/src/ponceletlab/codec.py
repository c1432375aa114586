"""URL-safe encoding of a complete experiment state.

Layout: one version character ("1"), then the base64url (unpadded) of a
packed little-endian body with fixed field order:

    B  family kind        (enum ordinal)
    d  outer semi-axis a
    d  outer semi-axis b
    B  free-parameter flag
    d  free parameter     (0.0 when absent)
    B  target type        (0 = center, 1 = vertex)
    H  target value
    B  derived kind       (enum ordinal)
    H  samples
    B  style mode         (enum ordinal)
    Q  palette seed
    d  animation speed

Equal states encode to identical strings; floats survive bit-exactly.
Invalid blobs are rejected, never clamped.
"""

from __future__ import annotations

import base64
import binascii
import math
import struct
from dataclasses import dataclass, replace
from typing import Optional

from .centers import DerivedKind, has_center
from .errors import CorruptBlob, OutOfRange, UnsupportedVersion
from .families import FamilyKind
from .render import StyleMode

SCHEMA_VERSION = 1
_BODY_FORMAT = "<BddBdBHBHBQd"
_BODY_SIZE = struct.calcsize(_BODY_FORMAT)
_MAX_SAMPLES = 65535

_KIND_ORDER = list(FamilyKind)
_DERIVED_ORDER = list(DerivedKind)
_STYLE_ORDER = list(StyleMode)


@dataclass(frozen=True)
class ExperimentState:
    family_kind: FamilyKind = FamilyKind.CONFOCAL
    a: float = 2.0
    b: float = 1.0
    free: Optional[float] = None
    center: Optional[int] = 1
    vertex: Optional[int] = None
    derived: DerivedKind = DerivedKind.REFERENCE
    samples: int = 720
    style_mode: StyleMode = StyleMode.WIREFRAME
    palette_seed: int = 0
    speed: float = 1.0
    schema_version: int = SCHEMA_VERSION


def default_state() -> ExperimentState:
    """The app's default view: the incenter locus over the confocal pair."""
    return ExperimentState()


def validate_state(s: ExperimentState) -> None:
    """Raise OutOfRange if any field violates the state invariants."""
    if s.schema_version != SCHEMA_VERSION:
        raise OutOfRange(f"schema_version must be {SCHEMA_VERSION}")
    if not (math.isfinite(s.a) and s.a > 0 and math.isfinite(s.b) and s.b > 0):
        raise OutOfRange(f"semi-axes must be finite and positive, got ({s.a}, {s.b})")
    kind = s.family_kind
    if kind is FamilyKind.GENERIC:
        if s.free is None or not (math.isfinite(s.free) and 0.0 < s.free < s.a):
            raise OutOfRange("generic family needs free in (0, a)")
    elif kind is FamilyKind.CIRCUMCIRCLE:
        if abs(s.a - s.b) > 1e-12 * max(s.a, s.b):
            raise OutOfRange("circumcircle family needs a = b")
        if s.free is not None and not (math.isfinite(s.free) and 0.0 < s.free < 1.0):
            raise OutOfRange("circumcircle free parameter must lie in (0, 1)")
    elif s.free is not None:
        raise OutOfRange(f"family {kind.value} takes no free parameter")
    if (s.center is None) == (s.vertex is None):
        raise OutOfRange("exactly one of center or vertex must be set")
    if s.center is not None and (not 1 <= s.center <= _MAX_SAMPLES
                                 or not has_center(s.center)):
        raise OutOfRange(f"center index not in the registry: {s.center}")
    if s.vertex is not None and s.vertex not in (1, 2, 3):
        raise OutOfRange(f"vertex index must be 1..3, got {s.vertex}")
    if not 16 <= s.samples <= _MAX_SAMPLES:
        raise OutOfRange(f"samples must lie in [16, {_MAX_SAMPLES}], got {s.samples}")
    if not 0 <= s.palette_seed < 2 ** 64:
        raise OutOfRange("palette seed must fit an unsigned 64-bit integer")
    if not (math.isfinite(s.speed) and s.speed > 0):
        raise OutOfRange(f"animation speed must be finite and positive, got {s.speed}")


def encode(s: ExperimentState) -> str:
    """Canonical, URL-safe text for the state (<= 256 characters)."""
    validate_state(s)
    body = struct.pack(
        _BODY_FORMAT,
        _KIND_ORDER.index(s.family_kind),
        s.a,
        s.b,
        0 if s.free is None else 1,
        0.0 if s.free is None else s.free,
        0 if s.center is not None else 1,
        s.center if s.center is not None else s.vertex,
        _DERIVED_ORDER.index(s.derived),
        s.samples,
        _STYLE_ORDER.index(s.style_mode),
        s.palette_seed,
        s.speed,
    )
    return str(SCHEMA_VERSION) + base64.urlsafe_b64encode(body).decode("ascii").rstrip("=")


def decode(blob: str) -> ExperimentState:
    """Exact inverse of encode for version-1 blobs; rejects anything else."""
    if not blob:
        raise CorruptBlob("empty state blob")
    version = blob[0]
    if version != str(SCHEMA_VERSION):
        if version.isdigit():
            raise UnsupportedVersion(f"state schema version {version} not supported")
        raise CorruptBlob(f"unrecognized version byte {version!r}")
    payload = blob[1:]
    try:
        body = base64.urlsafe_b64decode(payload + "=" * (-len(payload) % 4))
    except (binascii.Error, ValueError) as exc:
        raise CorruptBlob(f"undecodable state body: {exc}") from None
    if len(body) != _BODY_SIZE:
        raise CorruptBlob(f"state body has {len(body)} bytes, expected {_BODY_SIZE}")
    (kind_i, a, b, free_flag, free, target_type, target, derived_i,
     samples, style_i, seed, speed) = struct.unpack(_BODY_FORMAT, body)
    if kind_i >= len(_KIND_ORDER):
        raise OutOfRange(f"family kind ordinal {kind_i} out of range")
    if derived_i >= len(_DERIVED_ORDER):
        raise OutOfRange(f"derived kind ordinal {derived_i} out of range")
    if style_i >= len(_STYLE_ORDER):
        raise OutOfRange(f"style mode ordinal {style_i} out of range")
    if free_flag not in (0, 1):
        raise OutOfRange(f"free-parameter flag must be 0 or 1, got {free_flag}")
    if target_type not in (0, 1):
        raise OutOfRange(f"target type must be 0 or 1, got {target_type}")
    state = ExperimentState(
        family_kind=_KIND_ORDER[kind_i],
        a=a,
        b=b,
        free=free if free_flag else None,
        center=target if target_type == 0 else None,
        vertex=target if target_type == 1 else None,
        derived=_DERIVED_ORDER[derived_i],
        samples=samples,
        style_mode=_STYLE_ORDER[style_i],
        palette_seed=seed,
        speed=speed,
    )
    validate_state(state)
    return state


def state_with(s: ExperimentState, **changes) -> ExperimentState:
    """Functional update that re-validates the result."""
    out = replace(s, **changes)
    validate_state(out)
    return out
