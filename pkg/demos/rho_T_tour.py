"""Largest embedded disk on the (2,3,7) orbifold, computed three ways.

Run with ``python3 demos/rho_T_tour.py``.
"""

import math

from orbirad import CornerWeights, max_disk_radius, rho_T, solve_full
from orbirad.oracle import crosscheck

T237 = (math.pi / 2, math.pi / 3, math.pi / 7)


def main():
    w = CornerWeights.from_angles(T237)
    print("corner weights:", tuple(round(x, 6) for x in w))

    # root of the implicit equation in r
    r = max_disk_radius(w)
    # closed-form route through a cubic
    r_cubic = rho_T()
    print(f"implicit equation: {r:.15f}")
    print(f"cubic:             {r_cubic:.15f}")

    sol = solve_full(w)
    print("loop angles at the optimum:", [round(a, 9) for a in sol.loop_angles])
    print("equilateral angle theta:", round(sol.theta, 9))
    print("largest residual:", f"{sol.residual_max:.1e}")

    # brute force on the doubled triangle
    rep = crosscheck(T237, 400)
    print(f"grid oracle:       {rep.r_oracle:.15f} (diff {rep.abs_diff:.1e})")
    print("loops at the oracle argmax:", [round(x, 9) for x in rep.loops])


if __name__ == "__main__":
    main()
