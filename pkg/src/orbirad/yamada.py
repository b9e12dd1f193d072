"""Numeric checks behind the lower bound ``r(S) >= arcsinh(2/sqrt(3))`` for all hyperbolic surfaces.

The bound is attained only by the thrice-punctured sphere. Each function
returns a :class:`CheckReport` whose checks can be read independently. Any
violation found by a scan is reported, never asserted away.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .certify import Check
from .errors import DegenerateTriangle, DomainError
from .hypgeom import angle_from_sides, collar_half_width
from .solver import max_disk_radii, solve_full

EXACT_TOL = 1e-12
G_GRID = 200
SCAN_STEPS = 50

SQRT3 = math.sqrt(3.0)
SQRT7 = math.sqrt(7.0)
SHORT_CURVE = 2.0 * math.asinh(SQRT3 / 2.0)   # shortest curve crossing one of length <= 2 rho_S
LOOP_ANGLE_MIN = 2.0 * math.asin(math.sqrt(3.0 / 7.0))
THETA_MIN = math.acos(11.0 / 14.0)
HINGE_MIN = 2.0 * math.asin(SQRT3 / (2.0 * SQRT7))

__all__ = [
    "CheckReport", "TorusDomain", "cusp_case_report", "case_a_pants_check", "case_a_quad_check",
    "case_b_length_checks", "quad_angles", "rho_S", "torus_boundary_bounds", "torus_g",
]


def rho_S() -> float:
    """``arcsinh(2/sqrt(3))``, the maximum injectivity radius of the thrice-punctured sphere."""
    return math.asinh(2.0 / SQRT3)


@dataclass(frozen=True)
class CheckReport:
    name: str
    checks: tuple
    values: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"name": self.name, "checks": [c.to_dict() for c in self.checks],
                "values": dict(self.values), "pass": self.passed}


def _check_r(r: float) -> None:
    if not (0.0 < r <= rho_S() * (1.0 + 1e-15)):
        raise DomainError(f"r must lie in (0, rho_S], got {r!r}")


def _pants_angles(r: float, weights) -> tuple[list[float], float]:
    x = math.cosh(r)
    loops = [2.0 * math.asin(min(1.0, w / x)) for w in weights]
    theta = math.acos(1.0 - 1.0 / (2.0 * x * x))
    return loops, theta


def case_a_pants_check(r: float, weights=(1.0, 1.0, 1.0)) -> CheckReport:
    """Three loops of length ``2r`` bounding a pair of pants cannot close up below ``rho_S``.

    ``weights`` are ``cosh(L/2)`` of the three boundary lengths (1 for a
    cusp). The loop angles and the equilateral angle are read off the
    sine and cosine laws at radius ``r``; their total is at least ``2 pi``
    and equals it only for three cusps at ``r = rho_S``.
    """
    _check_r(r)
    weights = tuple(float(w) for w in weights)
    if len(weights) != 3 or any(not w >= 1.0 for w in weights):
        raise DomainError(f"boundary weights must be three values >= 1, got {weights}")
    loops, theta = _pants_angles(r, weights)
    total = sum(loops) + 3.0 * theta
    checks = [Check.compare(f"loop angle {i + 1} >= 2 asin(sqrt(3/7))", a, ">=", LOOP_ANGLE_MIN, EXACT_TOL)
              for i, a in enumerate(loops)]
    checks.append(Check.compare("theta >= acos(11/14)", theta, ">=", THETA_MIN, EXACT_TOL))
    checks.append(Check.compare("angle sum >= 2 pi", total, ">=", 2.0 * math.pi, EXACT_TOL))
    at_equality = abs(total - 2.0 * math.pi) <= EXACT_TOL
    extremal = abs(r - rho_S()) <= EXACT_TOL and all(w == 1.0 for w in weights)
    checks.append(Check("equality only for three cusps at rho_S", float(at_equality), "=",
                        float(extremal), at_equality == extremal))
    values = {"r": r, "weights": list(weights), "loop_angles": loops, "theta": theta,
              "angle_sum": total, "excess": total - 2.0 * math.pi}
    return CheckReport("case_a_pants", tuple(checks), values)


def quad_angles(r: float, t: float, diag13: float):
    """Angles of the convex quadrilateral ``V1 V2 V3 V4`` with sides ``2r, 2r, 2r, t``.

    Sides are ``V1V2 = V2V3 = V3V4 = 2r`` and ``V4V1 = t``; ``diag13`` is the
    diagonal ``V1V3``. Returns ``(phi, diag24, convex)`` with ``phi`` the
    interior angles at ``V2, V3, V1, V4`` in that order.
    """
    s = 2.0 * r
    apex2 = angle_from_sides(diag13, s, s)
    base = angle_from_sides(s, diag13, s)
    at3 = angle_from_sides(t, diag13, s)
    at1 = angle_from_sides(s, diag13, t)
    at4 = angle_from_sides(diag13, s, t)
    phi3_int = base + at3
    phi1_int = base + at1
    convex = phi3_int < math.pi and phi1_int < math.pi
    cosh24 = math.cosh(s) ** 2 - math.sinh(s) ** 2 * math.cos(phi3_int)
    diag24 = math.acosh(max(cosh24, 1.0))
    return (apex2, phi3_int, phi1_int, at4), diag24, convex


def case_a_quad_check(r: float, n: int = 121) -> CheckReport:
    """Angle bounds in a quadrilateral of loops, three of length ``2r`` and one at least ``2r``.

    Scans the diagonal ``V1V3`` over ``[2r, 4r)`` and the fourth side over
    ``[2r, 4 arccosh 2]``, keeping convex quadrilaterals whose other diagonal
    is also at least ``2r``. The two angles between equal sides are bounded
    by the half-angle law. The two angles next to the long side have no such
    argument; their scanned minimum is reported against the stated bound.
    """
    _check_r(r)
    s = 2.0 * r
    hinge = 2.0 * math.asin(1.0 / (2.0 * math.cosh(r)))
    diags = np.linspace(s, 2.0 * s, n)[:-1]
    sides = np.linspace(s, 4.0 * math.acosh(2.0), n)
    mins = [math.inf] * 4
    kept = skipped = 0
    for d13 in diags:
        for t in sides:
            if not (abs(d13 - s) < t < d13 + s):
                continue
            try:
                phi, d24, convex = quad_angles(r, float(t), float(d13))
            except DegenerateTriangle:
                skipped += 1
                continue
            if not convex or d24 < s * (1.0 - 1e-14):
                skipped += 1
                continue
            kept += 1
            mins = [min(m, p) for m, p in zip(mins, phi)]
    hinge_phi, _, _ = quad_angles(r, s, s)
    checks = [
        Check.compare("2 asin(sqrt3/(2 sqrt7)) = acos(11/14)", HINGE_MIN, "=", THETA_MIN, 1e-14),
        Check.compare("hinge angle at diagonal 2r", hinge_phi[0], "=", hinge, EXACT_TOL),
        Check.compare("min phi1", mins[0], ">=", HINGE_MIN, EXACT_TOL),
        Check.compare("min phi2", mins[1], ">=", HINGE_MIN, EXACT_TOL),
        Check.compare("min phi3", mins[2], ">=", HINGE_MIN / 2.0, EXACT_TOL),
        Check.compare("min phi4", mins[3], ">=", HINGE_MIN / 2.0, EXACT_TOL),
    ]
    # four loop angles, two equilateral angles, two hinge angles
    lower = 4.0 * LOOP_ANGLE_MIN + 2.0 * THETA_MIN + 2.0 * HINGE_MIN
    checks.append(Check.compare("angle sum lower bound > 2 pi", lower, ">", 2.0 * math.pi))
    values = {"r": r, "hinge_bound": hinge, "phi_min": mins, "quadrilaterals": kept,
              "rejected": skipped, "angle_sum_lower_bound": lower}
    return CheckReport("case_a_quad", tuple(checks), values)


@dataclass(frozen=True)
class TorusDomain:
    """Cut curve ``alpha`` and seam ``d`` of a one-holed torus with both short curves at most ``2 rho_S``."""

    alpha: float
    d: float

    def __post_init__(self):
        hi = 2.0 * rho_S() * (1.0 + 1e-15)
        lo = SHORT_CURVE * (1.0 - 1e-15)
        if not (lo <= self.alpha <= hi):
            raise DomainError(f"alpha must lie in [{SHORT_CURVE}, {2 * rho_S()}], got {self.alpha!r}")
        floor = max(SHORT_CURVE, 2.0 * collar_half_width(self.alpha))
        if not (floor * (1.0 - 1e-15) <= self.d <= hi):
            raise DomainError(f"d must lie in [{floor}, {2 * rho_S()}], got {self.d!r}")


def torus_g(alpha, d):
    """``sinh^2(alpha/2) (cosh d - 1) + 1``, the boundary quantity of the one-holed torus."""
    alpha = np.asarray(alpha, dtype=float)
    d = np.asarray(d, dtype=float)
    out = np.sinh(alpha / 2.0) ** 2 * (np.cosh(d) - 1.0) + 1.0
    return float(out) if out.ndim == 0 else out


def torus_boundary_bounds(n: int = G_GRID) -> CheckReport:
    lo, hi = SHORT_CURVE, 2.0 * rho_S()
    g_lo, g_hi = torus_g(lo, lo), torus_g(hi, hi)
    a = np.linspace(lo, hi, n + 2)[1:-1]
    G = torus_g(a[:, None], a[None, :])
    mono = bool(np.all(np.diff(G, axis=0) > 0.0) and np.all(np.diff(G, axis=1) > 0.0))
    # seam bounded below by the collar of alpha as well
    alphas = np.linspace(lo, hi, 4 * n + 1)
    d_floor = np.maximum(lo, 2.0 * collar_half_width(alphas))
    coupled = torus_g(alphas, d_floor)
    feasible = d_floor <= hi * (1.0 + 1e-15)
    coupled_min = float(coupled[feasible].min())
    sinh_half = math.sqrt(g_hi * g_hi - 1.0)
    w_at_max = collar_half_width(2.0 * math.acosh(g_hi))
    checks = [
        Check.compare("g at lower corner = 17/8", g_lo, "=", 17.0 / 8.0, EXACT_TOL),
        Check.compare("g at upper corner = 41/9", g_hi, "=", 41.0 / 9.0, EXACT_TOL),
        Check(f"g increasing on {n}x{n} grid", float(mono), "=", 1.0, mono),
        Check.compare("grid min >= 17/8", float(G.min()), ">=", 17.0 / 8.0),
        Check.compare("grid max <= 41/9", float(G.max()), "<=", 41.0 / 9.0),
        Check.compare("coupled min >= 17/8", coupled_min, ">=", 17.0 / 8.0),
        Check.compare("sinh of half boundary at max = 40/9", sinh_half, "=", 40.0 / 9.0, 1e-14),
        Check.compare("asinh(9/40) = ln(5/4)", math.asinh(9.0 / 40.0), "=", math.log(1.25), 1e-15),
        Check.compare("collar width at max = ln(5/4)", w_at_max, "=", math.log(1.25), 1e-15),
        Check.compare("ln(5/4) > ln(2/sqrt3)", math.log(1.25), ">", math.log(2.0 / SQRT3)),
    ]
    values = {"g_min_corner": g_lo, "g_max_corner": g_hi, "rectangle_min": float(G.min()),
              "rectangle_max": float(G.max()), "coupled_min": coupled_min, "collar_at_max": w_at_max}
    return CheckReport("torus_boundary", tuple(checks), values)


@functools.lru_cache(maxsize=4)
def case_b_length_checks(steps: int = SCAN_STEPS) -> CheckReport:
    """Length bounds for a one-holed torus whose boundary is at most ``2 rho_S``.

    Scans unordered triples of boundary lengths on a ``steps + 1`` point grid
    of ``[2 asinh(sqrt3/2), 2 rho_S]``, solves the pants system for each and
    tests the loop length ``l = 2r`` and the distance from the disk center to
    each boundary. Rows the solver rejects are counted and left out. The scan
    is deterministic, so results are cached per ``steps``.
    """
    rs = rho_S()
    bound37 = 2.0 * math.acosh(math.sqrt(37.0) / 3.0)
    crossing = SHORT_CURVE + 4.0 * math.log(1.25)
    L = np.linspace(SHORT_CURVE, 2.0 * rs, steps + 1)
    rows = np.array(list(itertools.combinations_with_replacement(L, 3)))
    r, status = max_disk_radii(np.cosh(rows / 2.0), strict=False)
    ok = status == 0
    ell = 2.0 * r[ok]
    cosh_d = np.sinh(ell / 2.0)[:, None] / np.sinh(rows[ok] / 2.0)
    short37 = int(np.count_nonzero(ell <= bound37))
    short_dist = int(np.count_nonzero(cosh_d.min(axis=1) < math.cosh(rs)))
    # cutting the torus along alpha gives a pair of pants with boundaries alpha, alpha, gamma
    a, g = np.meshgrid(L, L, indexing="ij")
    paired = np.stack([a.ravel(), a.ravel(), g.ravel()], axis=1)
    pr, pstatus = max_disk_radii(np.cosh(paired / 2.0), strict=False)
    pok = pstatus == 0
    p_ell = 2.0 * pr[pok]
    p_cosh_d = np.sinh(p_ell / 2.0) / np.sinh(paired[pok, 0] / 2.0)
    corner = solve_full(np.cosh(L[[0, 0, 0]] / 2.0))
    checks = [
        Check.compare("2 asinh(sqrt3/2) + 4 ln(5/4) > 2 rho_S", crossing, ">", 2.0 * rs),
        Check.compare("acosh(sqrt37/3) > rho_S", bound37 / 2.0, ">", rs),
        Check.compare("scan min loop > 2 acosh(sqrt37/3)", float(ell.min()), ">", bound37),
        Check.compare("scan min loop > 2 rho_S", float(ell.min()), ">", 2.0 * rs),
        Check.compare("scan min cosh(d) >= cosh(rho_S)", float(cosh_d.min()), ">=", math.cosh(rs)),
        Check.compare("paired min loop > 2 acosh(sqrt37/3)", float(p_ell.min()), ">", bound37),
        Check.compare("paired min loop > 2 rho_S", float(p_ell.min()), ">", 2.0 * rs),
        Check.compare("paired min cosh(d) >= cosh(rho_S)", float(p_cosh_d.min()), ">=", math.cosh(rs)),
        Check.compare("corner residual", corner.residual_max, "<=", 1e-10),
    ]
    values = {
        "rows": int(len(rows)), "solved": int(ok.sum()),
        "paired_rows": int(len(paired)), "paired_solved": int(pok.sum()),
        "paired_rows_loop_below_acosh37": int(np.count_nonzero(p_ell <= bound37)),
        "no_sign_change": int(np.count_nonzero(status == 1)),
        "multiple_roots": int(np.count_nonzero(status == 2)),
        "rows_loop_below_acosh37": short37, "rows_cosh_d_below": short_dist,
        "loop_min": float(ell.min()), "loop_max": float(ell.max()),
        "corner_loop": 2.0 * corner.r, "bound37": bound37,
    }
    return CheckReport("case_b_lengths", tuple(checks), values)


def cusp_case_report() -> dict:
    """Every check of this module at ``r = rho_S``."""
    rs = rho_S()
    reports = [
        case_a_pants_check(rs),
        case_a_quad_check(rs),
        torus_boundary_bounds(),
        case_b_length_checks(),
    ]
    identities = CheckReport("identities", (
        Check.compare("cosh(rho_S)^2 = 7/3", math.cosh(rs) ** 2, "=", 7.0 / 3.0, 1e-15),
        Check.compare("2 asin(sqrt(3/28)) = acos(11/14)", 2.0 * math.asin(math.sqrt(3.0 / 28.0)), "=",
                      THETA_MIN, 1e-14),
        Check.compare("sin(loop/2) cosh(rho_S) = 1", math.sin(LOOP_ANGLE_MIN / 2.0) * math.cosh(rs), "=",
                      1.0, 1e-14),
    ))
    reports.insert(0, identities)
    return {"rho_S": rs, "reports": [rep.to_dict() for rep in reports],
            "pass": all(rep.passed for rep in reports)}
