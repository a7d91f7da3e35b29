"""Write the construction figures for a scene as SVG files.

    python3 scripts/make_figures.py --scene scenes/dodecagon.json --outdir figures
"""

import argparse
from pathlib import Path

from equidist.cli import main as cli

FIGURES = {
    "reflected_pairs": "polygon,focal",
    "voronoi_cells": "polygon,focal,voronoi",
    "midset_pieces": "voronoi,midset,focal",
    "arcs_in_cells": "voronoi,arcs,focal",
    "focal_sets": "polygon,arcs,focal",
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scene", default="scenes/square.json")
    ap.add_argument("--outdir", default="figures")
    args = ap.parse_args(argv)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(args.scene).stem
    for name, layers in FIGURES.items():
        path = out / f"{stem}_{name}.svg"
        code = cli(["render", "--scene", args.scene, "--layers", layers, "--out", str(path)])
        if code:
            return code
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
