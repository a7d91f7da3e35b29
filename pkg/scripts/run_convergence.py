"""Convergence of midsets for inscribed polygons of a circle and an ellipse.

Prints one table per curve; with --csv-dir also writes the tables as CSV.
"""

import argparse
import math
import time
from pathlib import Path

from equidist.geometry import Point2
from equidist.hausdorff import convergence_experiment, parse_curve


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--curves", nargs="+", default=["circle:1", "ellipse:1.5,1"])
    ap.add_argument("--n-list", default="4,8,16,32,64")
    ap.add_argument("--radius", type=float, default=3.0)
    ap.add_argument("--pitch", type=float, default=0.01)
    ap.add_argument("--csv-dir", type=Path)
    args = ap.parse_args(argv)
    n_list = [int(v) for v in args.n_list.split(",")]

    for text in args.curves:
        curve = parse_curve(text)
        t0 = time.perf_counter()
        rows = convergence_experiment(curve, Point2(curve.cx, curve.cy), n_list, args.radius, args.pitch)
        print(f"{text}  (R={args.radius}, h={args.pitch}, {time.perf_counter() - t0:.1f} s)")
        print(f"{'n':>4} {'dh_polygon':>12} {'dh_midset':>12} {'dh_focal':>12} {'1-cos(pi/n)':>12}")
        for r in rows:
            print(f"{r.n:>4} {r.dh_polygon:12.6f} {r.dh_midset:12.6f} {r.dh_focal:12.6f} "
                  f"{1 - math.cos(math.pi / r.n):12.6f}")
        if args.csv_dir:
            args.csv_dir.mkdir(parents=True, exist_ok=True)
            path = args.csv_dir / (text.replace(":", "_").replace(",", "x") + ".csv")
            with path.open("w") as fh:
                fh.write("n,dh_polygon,dh_midset,dh_focal\n")
                for r in rows:
                    fh.write(f"{r.n},{r.dh_polygon!r},{r.dh_midset!r},{r.dh_focal!r}\n")
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
