"""Command-line interface: batch rendering, classification, sweeps and serving.

Exit codes: 0 on success, 2 on usage errors (argparse), 1 on computation
errors, which are reported to stderr as single-line JSON {code, message}.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .centers import DerivedKind
from .codec import ExperimentState, decode, encode
from .errors import PonceletError
from .families import FamilyKind, make_family
from .locus import LocusRequest, iter_samples, sweep_locus
from .render import Scene, Style, StyleMode, export_frames, render_scene
from .service import classification_payload, serve, state_payload


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=[k.value for k in FamilyKind])
    p.add_argument("-a", type=float, required=True, help="outer x semi-axis")
    p.add_argument("-b", type=float, required=True, help="outer y semi-axis")
    p.add_argument("--free", type=float, default=None,
                   help="free parameter (circumcircle fraction or generic caustic x semi-axis)")


def _add_target_args(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--center", type=int, help="triangle center index k")
    group.add_argument("--vertex", type=int, choices=(1, 2, 3), help="vertex index")
    p.add_argument("--derived", default=DerivedKind.REFERENCE.value,
                   choices=[k.value for k in DerivedKind])
    p.add_argument("--samples", type=int, default=720)


def _add_style_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--style", default=StyleMode.WIREFRAME.value,
                   choices=[m.value for m in StyleMode])
    p.add_argument("--seed", type=int, default=0, help="palette seed")
    p.add_argument("--stroke-width", type=float, default=None)
    p.add_argument("--background", default=None)
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=800)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ponceletlab",
        description="Poncelet triangle families, center loci, and vector art")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", help="render a locus scene to SVG")
    _add_family_args(p)
    _add_target_args(p)
    _add_style_args(p)
    p.add_argument("-o", "--output", required=True, help="output SVG path")

    p = sub.add_parser("classify", help="classify a locus, JSON to stdout")
    _add_family_args(p)
    _add_target_args(p)

    p = sub.add_parser("sweep", help="locus points as CSV (t,x,y)")
    _add_family_args(p)
    _add_target_args(p)
    p.add_argument("-o", "--output", default=None, help="CSV path (default stdout)")

    p = sub.add_parser("frames", help="numbered SVG frames of the animation")
    _add_family_args(p)
    _add_target_args(p)
    _add_style_args(p)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("-o", "--output", required=True, help="output directory")

    p = sub.add_parser("state", help="encode/decode a shareable state blob")
    state_sub = p.add_subparsers(dest="state_command", required=True)
    pe = state_sub.add_parser("encode")
    _add_family_args(pe)
    _add_target_args(pe)
    pe.add_argument("--style", default=StyleMode.WIREFRAME.value,
                    choices=[m.value for m in StyleMode])
    pe.add_argument("--seed", type=int, default=0)
    pe.add_argument("--speed", type=float, default=1.0)
    pd = state_sub.add_parser("decode")
    pd.add_argument("blob")

    p = sub.add_parser("serve", help="run the JSON service")
    p.add_argument("--port", type=int, default=8777)
    p.add_argument("--static", default=None, help="directory with the built UI")

    return parser


def _family_from_args(args) -> "FamilySpec":
    return make_family(args.family, args.a, args.b, args.free)


def _request_from_args(args) -> LocusRequest:
    return LocusRequest(family=_family_from_args(args), center=args.center,
                        vertex=args.vertex, derived=DerivedKind(args.derived),
                        samples=args.samples)


def _style_from_args(args) -> Style:
    return Style(mode=StyleMode(args.style), stroke_width=args.stroke_width,
                 background=args.background, palette_seed=args.seed)


def _cmd_render(args) -> int:
    req = _request_from_args(args)
    locus = sweep_locus(req)
    scene = Scene(outer=req.family.outer, caustic=req.family.caustic, loci=(locus,))
    svg = render_scene(scene, _style_from_args(args), args.width, args.height)
    Path(args.output).write_text(svg, newline="\n")
    return 0


def _cmd_classify(args) -> int:
    locus = sweep_locus(_request_from_args(args))
    payload = classification_payload(locus.classification)
    payload["dropped_samples"] = locus.dropped_samples
    print(json.dumps(payload))
    return 0


def _cmd_sweep(args) -> int:
    req = _request_from_args(args)
    lines = ["t,x,y"]
    count = 0
    for t, p in iter_samples(req):
        if p is not None:
            lines.append(f"{t!r},{p.x!r},{p.y!r}")
            count += 1
    if count == 0:
        raise PonceletError("every sample of the sweep was degenerate")
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_frames(args) -> int:
    req = _request_from_args(args)
    svgs = export_frames(req.family, req, _style_from_args(args), args.count,
                         args.width, args.height)
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    digits = max(4, len(str(args.count - 1)))
    for i, svg in enumerate(svgs):
        (outdir / f"frame_{i:0{digits}d}.svg").write_text(svg, newline="\n")
    print(f"wrote {len(svgs)} frames to {outdir}")
    return 0


def _cmd_state(args) -> int:
    if args.state_command == "encode":
        state = ExperimentState(
            family_kind=FamilyKind(args.family), a=args.a, b=args.b,
            free=args.free, center=args.center, vertex=args.vertex,
            derived=DerivedKind(args.derived), samples=args.samples,
            style_mode=StyleMode(args.style), palette_seed=args.seed,
            speed=args.speed)
        print(encode(state))
    else:
        print(json.dumps(state_payload(decode(args.blob))))
    return 0


def _cmd_serve(args) -> int:
    port = int(os.environ.get("PONCELET_PORT", args.port))
    serve(port, args.static)
    return 0


_COMMANDS = {
    "render": _cmd_render,
    "classify": _cmd_classify,
    "sweep": _cmd_sweep,
    "frames": _cmd_frames,
    "state": _cmd_state,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except PonceletError as exc:
        print(json.dumps({"code": exc.code, "message": str(exc)}),
              file=sys.stderr)
        return 1
    except ValueError as exc:
        print(json.dumps({"code": "InvalidValue", "message": str(exc)}),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
