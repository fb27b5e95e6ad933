#!/usr/bin/env python3
"""Write a sampled Gaussian mode field in the sfwm-sim mode-field CSV layout."""

import argparse
import math

COLUMNS = ["x_m", "y_m", "ex_re", "ex_im", "ey_re", "ey_im", "ez_re", "ez_im",
           "hx_re", "hx_im", "hy_re", "hy_im", "hz_re", "hz_im", "in_core"]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("out")
    p.add_argument("--waist-um", type=float, default=0.5)
    p.add_argument("--half-width-um", type=float, default=2.0)
    p.add_argument("--points", type=int, default=61)
    p.add_argument("--core-half-width-um", type=float, default=None,
                   help="core region |x|,|y| <= this (default: whole grid)")
    p.add_argument("--z0", type=float, default=376.730)
    args = p.parse_args()

    w = args.waist_um * 1e-6
    half = args.half_width_um * 1e-6
    core = None if args.core_half_width_um is None else args.core_half_width_um * 1e-6
    xs = [-half + 2 * half * i / (args.points - 1) for i in range(args.points)]
    with open(args.out, "w") as f:
        f.write(",".join(COLUMNS) + "\n")
        for y in xs:
            for x in xs:
                e = math.exp(-(x * x + y * y) / (w * w))
                inside = core is None or (abs(x) <= core and abs(y) <= core)
                row = [x, y, e, 0, 0, 0, 0, 0, 0, 0, e / args.z0, 0, 0, 0, int(inside)]
                f.write(",".join(repr(float(v)) if i < 14 else str(v) for i, v in enumerate(row)) + "\n")


if __name__ == "__main__":
    main()
