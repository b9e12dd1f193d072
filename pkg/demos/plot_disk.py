"""Write SVG pictures of the optimal disk for a few corner choices.

Run with ``python3 demos/plot_disk.py [outdir]``.
"""

import pathlib
import sys

from orbirad.cli import main as cli

CASES = {"t237": "2,3,7", "t334": "3,3,4", "cusp37": "cusp,3,7"}


def main(outdir="."):
    out = pathlib.Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, corners in CASES.items():
        path = out / f"{name}.svg"
        code = cli(["plot", "--corners", corners, "--out", str(path)])
        print(f"{corners}: {path} (exit {code})")


if __name__ == "__main__":
    main(*sys.argv[1:2])
