#!/usr/bin/env python3
"""Render a small gallery of styled locus designs into an output directory.

    python scripts/render_gallery.py -o gallery/
"""

import argparse
from pathlib import Path

from ponceletlab.centers import DerivedKind
from ponceletlab.families import make_family
from ponceletlab.locus import LocusRequest, sweep_locus
from ponceletlab.render import Scene, Style, StyleMode, render_scene

PIECES = [
    ("notables_wireframe", "confocal", 2.0, 1.0, [1, 2, 3, 4], "reference",
     StyleMode.WIREFRAME, 1),
    ("symmedian_quartic_dark", "confocal", 2.0, 1.0, [6], "reference",
     StyleMode.DARK_THICK, 2),
    ("x59_regions", "confocal", 2.0, 1.0, [59], "reference",
     StyleMode.REGION_FILL, 7),
    ("orthic_feuerbach_regions", "confocal", 1.8, 1.0, [11], "orthic",
     StyleMode.REGION_FILL, 21),
    ("excentral_vertex_dark", "excentral", 2.0, 1.0, [59], "reference",
     StyleMode.DARK_THICK, 5),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-o", "--output", default="gallery")
    ap.add_argument("--size", type=int, default=900)
    args = ap.parse_args()
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)

    for name, kind, a, b, centers, derived, mode, seed in PIECES:
        family = make_family(kind, a, b)
        loci = tuple(
            sweep_locus(LocusRequest(family=family, center=k,
                                     derived=DerivedKind(derived)))
            for k in centers)
        scene = Scene(outer=family.outer, caustic=family.caustic, loci=loci)
        svg = render_scene(scene, Style(mode=mode, palette_seed=seed),
                           args.size, args.size)
        path = outdir / f"{name}.svg"
        path.write_text(svg, newline="\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
