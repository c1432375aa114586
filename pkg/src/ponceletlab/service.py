"""Stateless JSON-over-HTTP service exposing the engine to the UI.

The WSGI application is a plain callable (testable in-process without a
socket); ``serve`` wraps it in a threading WSGI server.  Every computation is
pure, so concurrent requests share no mutable state.  Field names are pinned
by ``api_contract.json`` and checked by golden tests on both sides of the UI
boundary.
"""

from __future__ import annotations

import json
import mimetypes
import posixpath
from pathlib import Path
from wsgiref.simple_server import WSGIServer, make_server
from socketserver import ThreadingMixIn

from .centers import DerivedKind, center_position, derived_triangle, registry_listing
from .codec import ExperimentState, decode, validate_state
from .errors import BadRequest, PonceletError
from .families import (
    STATIONARY_CENTER,
    FamilyKind,
    FamilySpec,
    make_family,
    porism_residual,
    triangle_at,
)
from .locus import Classification, Locus, LocusRequest, sweep_locus
from .render import Scene, Style, StyleMode, render_scene

JSON_TYPE = "application/json; charset=utf-8"
SVG_TYPE = "image/svg+xml; charset=utf-8"

_FAMILY_PARAM_SCHEMAS = {
    FamilyKind.CONFOCAL: {"a": "number > 0", "b": "number > 0"},
    FamilyKind.INCIRCLE: {"a": "number > 0", "b": "number > 0"},
    FamilyKind.CIRCUMCIRCLE: {"a": "number > 0", "b": "must equal a",
                              "free": "optional caustic fraction in (0, 1), default 0.6"},
    FamilyKind.HOMOTHETIC: {"a": "number > 0", "b": "number > 0"},
    FamilyKind.DUAL: {"a": "number > 0", "b": "number > 0"},
    FamilyKind.EXCENTRAL: {"a": "number > 0", "b": "number > 0"},
    FamilyKind.GENERIC: {"a": "number > 0", "b": "number > 0",
                         "free": "caustic x semi-axis in (0, a)"},
}


def families_payload() -> list[dict]:
    return [
        {
            "kind": kind.value,
            "params_schema": _FAMILY_PARAM_SCHEMAS[kind],
            "expected_stationary_center": STATIONARY_CENTER.get(kind),
        }
        for kind in FamilyKind
    ]


def centers_payload() -> list[dict]:
    return [{"k": k, "name": name} for k, name in registry_listing()]


def classification_payload(c: Classification) -> dict:
    return {
        "kind": c.kind.value,
        "conic_residual": c.conic_residual,
        "quartic_residual": c.quartic_residual,
        "self_intersections": c.self_intersections,
    }


def locus_payload(locus: Locus, family: FamilySpec | None = None) -> dict:
    payload = {
        "points": [[p.x, p.y] for p in locus.points],
        "classification": classification_payload(locus.classification),
        "dropped_samples": locus.dropped_samples,
    }
    if family is not None:
        # the UI draws the conic pair without computing any geometry itself
        payload["family"] = {
            "outer": [family.outer.semi_axis_x, family.outer.semi_axis_y],
            "caustic": [family.caustic.semi_axis_x, family.caustic.semi_axis_y],
        }
    return payload


def state_payload(s: ExperimentState) -> dict:
    return {
        "schema_version": s.schema_version,
        "family": {"kind": s.family_kind.value, "a": s.a, "b": s.b, "free": s.free},
        "target": {"center": s.center} if s.center is not None else {"vertex": s.vertex},
        "derived": s.derived.value,
        "samples": s.samples,
        "style_mode": s.style_mode.value,
        "palette_seed": s.palette_seed,
        "speed": s.speed,
    }


def _require(obj: dict, key: str):
    if key not in obj:
        raise BadRequest(f"missing required field {key!r}")
    return obj[key]


def _number(obj: dict, key: str, value) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise BadRequest(f"field {key!r} must be a number")
    return float(value)


def parse_family(obj) -> FamilySpec:
    if not isinstance(obj, dict):
        raise BadRequest("family must be an object {kind, a, b, free?}")
    kind_raw = _require(obj, "kind")
    try:
        kind = FamilyKind(kind_raw)
    except ValueError:
        raise BadRequest(f"unknown family kind {kind_raw!r}") from None
    a = _number(obj, "a", _require(obj, "a"))
    b = _number(obj, "b", _require(obj, "b"))
    free = obj.get("free")
    if free is not None:
        free = _number(obj, "free", free)
    return make_family(kind, a, b, free)


def parse_derived(value) -> DerivedKind:
    if value is None:
        return DerivedKind.REFERENCE
    try:
        return DerivedKind(value)
    except ValueError:
        raise BadRequest(f"unknown derived kind {value!r}") from None


def parse_locus_request(body: dict) -> LocusRequest:
    family = parse_family(_require(body, "family"))
    target = _require(body, "target")
    if not isinstance(target, dict) or len(target.keys() & {"center", "vertex"}) != 1:
        raise BadRequest("target must set exactly one of center or vertex")
    center = target.get("center")
    vertex = target.get("vertex")
    if center is not None and (not isinstance(center, int) or isinstance(center, bool)):
        raise BadRequest("target.center must be an integer")
    if vertex is not None and (not isinstance(vertex, int) or isinstance(vertex, bool)):
        raise BadRequest("target.vertex must be an integer")
    samples = body.get("samples", 720)
    if not isinstance(samples, int) or isinstance(samples, bool):
        raise BadRequest("samples must be an integer")
    return LocusRequest(family=family, center=center, vertex=vertex,
                        derived=parse_derived(body.get("derived")),
                        samples=samples)


def parse_style(obj) -> Style:
    if obj is None:
        return Style()
    if not isinstance(obj, dict):
        raise BadRequest("style must be an object")
    mode_raw = obj.get("mode", StyleMode.WIREFRAME.value)
    try:
        mode = StyleMode(mode_raw)
    except ValueError:
        raise BadRequest(f"unknown style mode {mode_raw!r}") from None
    stroke = obj.get("stroke_width")
    if stroke is not None:
        stroke = _number(obj, "stroke_width", stroke)
        if stroke <= 0:
            raise BadRequest("stroke_width must be positive")
    seed = obj.get("palette_seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise BadRequest("palette_seed must be an integer")
    return Style(mode=mode, stroke_width=stroke,
                 background=obj.get("background"), palette_seed=seed)


def state_to_request(s: ExperimentState) -> tuple[LocusRequest, Style]:
    family = make_family(s.family_kind, s.a, s.b, s.free)
    req = LocusRequest(family=family, center=s.center, vertex=s.vertex,
                       derived=s.derived, samples=s.samples)
    return req, Style(mode=s.style_mode, palette_seed=s.palette_seed)


# ---------------------------------------------------------------------------
# Endpoint handlers: each returns (status, payload bytes, content type).


def _handle_families(_body) -> tuple[int, bytes, str]:
    return 200, _json_bytes(families_payload()), JSON_TYPE


def _handle_centers(_body) -> tuple[int, bytes, str]:
    return 200, _json_bytes(centers_payload()), JSON_TYPE


def _handle_locus(body: dict) -> tuple[int, bytes, str]:
    request = parse_locus_request(body)
    locus = sweep_locus(request)
    return 200, _json_bytes(locus_payload(locus, request.family)), JSON_TYPE


def _handle_triangle(body: dict) -> tuple[int, bytes, str]:
    family = parse_family(_require(body, "family"))
    t = _number(body, "t", _require(body, "t"))
    derived = parse_derived(body.get("derived"))
    wanted = body.get("centers", [])
    if not isinstance(wanted, list) or any(
            not isinstance(k, int) or isinstance(k, bool) for k in wanted):
        raise BadRequest("centers must be a list of integers")
    tri = derived_triangle(triangle_at(family, t), derived)
    payload = {
        "vertices": [[v.x, v.y] for v in tri.vertices()],
        "porism_residual": porism_residual(family, t),
        "centers": {str(k): [p.x, p.y] for k in wanted
                    for p in (center_position(tri, k),)},
    }
    return 200, _json_bytes(payload), JSON_TYPE


def _handle_render(body: dict) -> tuple[int, bytes, str]:
    if "state" in body:
        blob = body["state"]
        if not isinstance(blob, str):
            raise BadRequest("state must be an encoded string")
        req, style = state_to_request(decode(blob))
        if "style" in body:
            style = parse_style(body["style"])
    else:
        req = parse_locus_request(body)
        style = parse_style(body.get("style"))
    width = body.get("width", 800)
    height = body.get("height", 800)
    if not all(isinstance(v, int) and not isinstance(v, bool) and v > 0
               for v in (width, height)):
        raise BadRequest("width and height must be positive integers")
    locus = sweep_locus(req)
    scene = Scene(outer=req.family.outer, caustic=req.family.caustic, loci=(locus,))
    svg = render_scene(scene, style, width, height)
    return 200, svg.encode("utf-8"), SVG_TYPE


def _handle_state(blob: str) -> tuple[int, bytes, str]:
    state = decode(blob)
    validate_state(state)
    return 200, _json_bytes(state_payload(state)), JSON_TYPE


def _json_bytes(payload) -> bytes:
    return json.dumps(payload).encode("utf-8")


def _error_bytes(code: str, message: str) -> bytes:
    return _json_bytes({"code": code, "message": message})


_POST_ROUTES = {
    "/api/locus": _handle_locus,
    "/api/triangle": _handle_triangle,
    "/api/render": _handle_render,
}
_GET_ROUTES = {
    "/api/families": _handle_families,
    "/api/centers": _handle_centers,
}


def create_app(static_dir: str | None = None):
    """WSGI application serving the JSON API (and optionally a static UI)."""
    static_root = Path(static_dir).resolve() if static_dir else None

    def app(environ, start_response):
        method = environ["REQUEST_METHOD"]
        path = environ.get("PATH_INFO", "/")
        try:
            status, payload, ctype = _dispatch(method, path, environ, static_root)
        except PonceletError as exc:
            status = exc.http_status
            payload = _error_bytes(exc.code, str(exc))
            ctype = JSON_TYPE
        except Exception as exc:  # a 500 must carry a complete error body
            status = 500
            payload = _error_bytes("InternalError", f"{type(exc).__name__}: {exc}")
            ctype = JSON_TYPE
        start_response(_status_line(status), [
            ("Content-Type", ctype),
            ("Content-Length", str(len(payload))),
        ])
        return [payload]

    return app


def _dispatch(method, path, environ, static_root):
    if path.startswith("/api/state/"):
        if method != "GET":
            return 405, _error_bytes("MethodNotAllowed", "use GET"), JSON_TYPE
        return _handle_state(path[len("/api/state/"):])
    if path in _GET_ROUTES:
        if method != "GET":
            return 405, _error_bytes("MethodNotAllowed", "use GET"), JSON_TYPE
        return _GET_ROUTES[path](None)
    if path in _POST_ROUTES:
        if method != "POST":
            return 405, _error_bytes("MethodNotAllowed", "use POST"), JSON_TYPE
        return _POST_ROUTES[path](_read_json(environ))
    if static_root is not None and method == "GET":
        return _serve_static(static_root, path)
    return 404, _error_bytes("NotFound", f"no route for {method} {path}"), JSON_TYPE


def _read_json(environ) -> dict:
    try:
        length = int(environ.get("CONTENT_LENGTH") or 0)
    except ValueError:
        length = 0
    raw = environ["wsgi.input"].read(length) if length else b""
    if not raw:
        raise BadRequest("request body must be a JSON object")
    try:
        body = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise BadRequest(f"malformed JSON body: {exc}") from None
    if not isinstance(body, dict):
        raise BadRequest("request body must be a JSON object")
    return body


def _serve_static(root: Path, path: str):
    rel = posixpath.normpath(path.lstrip("/")) or "index.html"
    if rel in (".", ""):
        rel = "index.html"
    target = (root / rel).resolve()
    if root not in target.parents and target != root:
        return 404, _error_bytes("NotFound", "path escapes static root"), JSON_TYPE
    if target.is_dir():
        target = target / "index.html"
    if not target.is_file():
        return 404, _error_bytes("NotFound", f"no static file {rel}"), JSON_TYPE
    ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
    return 200, target.read_bytes(), ctype


_STATUS_TEXT = {
    200: "200 OK",
    400: "400 Bad Request",
    404: "404 Not Found",
    405: "405 Method Not Allowed",
    422: "422 Unprocessable Entity",
    500: "500 Internal Server Error",
}


def _status_line(status: int) -> str:
    return _STATUS_TEXT.get(status, f"{status} Error")


class _ThreadingWSGIServer(ThreadingMixIn, WSGIServer):
    daemon_threads = True


def serve(port: int, static_dir: str | None = None) -> None:
    """Run the service until interrupted."""
    app = create_app(static_dir)
    with make_server("", port, app, server_class=_ThreadingWSGIServer) as httpd:
        print(f"serving on http://localhost:{port}/ "
              f"(static: {static_dir or 'none'})", flush=True)
        httpd.serve_forever()
