"""Compare the solver with the brute-force oracle on random triangles.

Run with ``python3 demos/oracle_check.py [count]``.
"""

import math
import sys

import numpy as np

from orbirad.oracle import crosscheck


def main(count=10):
    rng = np.random.default_rng(2024)
    done = 0
    while done < count:
        angles = rng.uniform(0.0, math.pi / 2, 3)
        if done == 0:
            angles[0] = 0.0  # one ideal corner
        if angles.sum() >= math.pi - 1e-2:
            continue
        rep = crosscheck(tuple(angles), 400)
        shown = ", ".join(f"{a:.4f}" for a in angles)
        print(f"({shown})  solver {rep.r_solver:.12f}  oracle {rep.r_oracle:.12f}  diff {rep.abs_diff:.1e}")
        done += 1


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 10)
