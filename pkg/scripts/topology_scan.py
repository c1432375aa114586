#!/usr/bin/env python3
"""Scan the outer-ellipse aspect ratio and watch a locus change topology.

Defaults reproduce the Feuerbach-point-of-the-orthic experiment: as a/b
grows, the locus flips between simple and self-intersected shapes.

    python scripts/topology_scan.py --center 11 --derived orthic \
        --start 1.05 --stop 2.0 --steps 20
"""

import argparse
import math

from ponceletlab.centers import DerivedKind
from ponceletlab.families import make_family
from ponceletlab.locus import LocusRequest, sweep_locus


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="confocal")
    ap.add_argument("--center", type=int, default=11)
    ap.add_argument("--derived", default="orthic",
                    choices=[k.value for k in DerivedKind])
    ap.add_argument("--start", type=float, default=1.05)
    ap.add_argument("--stop", type=float, default=2.0)
    ap.add_argument("--steps", type=int, default=20)
    ap.add_argument("--samples", type=int, default=720)
    args = ap.parse_args()

    print(f"{'a/b':>7}  {'kind':<11} {'crossings':>9}  {'conic res':>10}  "
          f"{'quartic res':>11}  {'dropped':>7}")
    previous = None
    for i in range(args.steps):
        ratio = args.start + (args.stop - args.start) * i / max(args.steps - 1, 1)
        family = make_family(args.family, ratio, 1.0)
        locus = sweep_locus(LocusRequest(
            family=family, center=args.center,
            derived=DerivedKind(args.derived), samples=args.samples))
        c = locus.classification
        marker = ""
        outcome = (c.kind.value, c.self_intersections)
        if previous is not None and outcome != previous:
            marker = "  <- transition"
        previous = outcome
        print(f"{ratio:7.3f}  {c.kind.value:<11} {c.self_intersections:>9}  "
              f"{c.conic_residual:10.2e}  {c.quartic_residual:11.2e}  "
              f"{locus.dropped_samples:>7}{marker}")


if __name__ == "__main__":
    main()
