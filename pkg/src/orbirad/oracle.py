"""Brute-force maximum injectivity radius, independent of the implicit equation.

The triangle is placed explicitly (:func:`orbirad.hypgeom.place_double_triangle`),
the injectivity radius at a point is half the shortest of its three corner
loops, and the maximum is located by a barycentric grid followed by a
golden-section refinement in a small exponential-map chart around the best
grid sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .corners import CornerWeights, Cusp
from .errors import OutsideTriangle
from .hypgeom import (
    SurfaceModel,
    TriangleAngles,
    _dist,
    as_hpoint,
    exp_map,
    loop_length,
    minkowski,
    place_double_triangle,
    tangent_frame,
)
from .solver import max_disk_radius

REFINE_TOL = 1e-8
_GOLDEN_TOL = 1e-10
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_CONTAIN_TOL = 1e-12

__all__ = ["OracleReport", "SurfaceModel", "crosscheck", "grid_max", "inj_radius_at", "loops_at"]


def loops_at(m: SurfaceModel, p) -> tuple[float, float, float]:
    """Lengths of the three corner loops based at ``p``."""
    dist = m.corner_distance(np.asarray(p, dtype=float))
    return tuple(loop_length(m.corners[i], float(dist[i]), horocycle=m.horocycles[i]) for i in range(3))


def inj_radius_at(m: SurfaceModel, p) -> float:
    """Injectivity radius at ``p``: half the shortest loop."""
    p = as_hpoint(p)
    if not m.contains(p, _CONTAIN_TOL):
        raise OutsideTriangle(f"point {p!r} is not in the closed triangle")
    return 0.5 * min(loops_at(m, p))


def _radius_many(m: SurfaceModel, P) -> np.ndarray:
    # vectorised inj_radius_at without validation
    dist = m.corner_distance(P)
    loops = np.empty_like(dist)
    for i, corner in enumerate(m.corners):
        d = dist[..., i]
        if isinstance(corner, Cusp):
            loops[..., i] = 2.0 * np.arcsinh(np.exp(d) * m.horocycles[i] / 2.0)
        elif corner.angle == math.pi / 2:
            loops[..., i] = 2.0 * d
        else:
            loops[..., i] = 2.0 * np.arcsinh(math.sin(corner.angle) * np.sinh(d))
    return 0.5 * loops.min(axis=-1)


def _lattice(n: int) -> np.ndarray:
    i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    keep = i + j <= n
    i, j = i[keep], j[keep]
    return np.stack([i, j, n - i - j], axis=-1)


class _Chart:
    """Exponential-map chart ``(u, v) -> exp_p0(u e1 + v e2)`` with the radius in scalar math."""

    def __init__(self, m: SurfaceModel, p0):
        self.m = m
        self.p0 = np.asarray(p0, dtype=float)
        self.e1, self.e2 = tangent_frame(self.p0)
        V = m.vertices
        self.a = [float(minkowski(self.p0, V[i])) for i in range(3)]
        self.b = [float(minkowski(self.e1, V[i])) for i in range(3)]
        self.c = [float(minkowski(self.e2, V[i])) for i in range(3)]

    def point(self, u: float, v: float) -> np.ndarray:
        return exp_map(self.p0, u * self.e1 + v * self.e2)

    def radius(self, u: float, v: float) -> float:
        rho = math.hypot(u, v)
        ch = math.cosh(rho)
        sh = math.sinh(rho) / rho if rho > 0.0 else 1.0
        m = self.m
        best = math.inf
        for i in range(3):
            ip = ch * self.a[i] + sh * (u * self.b[i] + v * self.c[i])
            if m.ideal[i]:
                dist = math.log(ip / m.horocycle_levels[i])
            else:
                dist = math.acosh(max(ip, 1.0))
            best = min(best, loop_length(m.corners[i], dist, horocycle=m.horocycles[i]))
        return 0.5 * best


def _golden_max(func, a: float, b: float, tol: float):
    """Maximise a unimodal ``func`` on ``[a, b]``; returns ``(x, f(x), iterations)``."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = func(c), func(d)
    steps = 0
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = func(d)
        steps += 1
    return (c, fc, steps) if fc >= fd else (d, fd, steps)


def grid_max(m: SurfaceModel, resolution: int, *, refine: bool = True):
    """Maximum of the injectivity radius over the triangle.

    Samples the ``(resolution+1)(resolution+2)/2`` barycentric lattice of the
    Klein-model triangle (ideal vertices themselves are skipped), then refines
    around the best sample with nested golden-section searches along the two
    chart directions. Returns ``(radius, point)``; ``grid_max.last_steps``
    records the number of refinement iterations.
    """
    if resolution < 16:
        raise ValueError(f"resolution must be >= 16, got {resolution}")
    lat = _lattice(resolution)
    keep = np.ones(len(lat), dtype=bool)
    for i in range(3):
        if m.ideal[i]:
            keep &= lat[:, i] != resolution
    lat = lat[keep]
    P = m.from_barycentric(lat / resolution)
    R = _radius_many(m, P)
    k = int(np.argmax(R))
    best_r, best_p = float(R[k]), P[k]
    steps = 0
    if refine:
        # chart half-width: a few lattice spacings around the best sample
        moves = np.array([[1, -1, 0], [-1, 1, 0], [1, 0, -1], [-1, 0, 1], [0, 1, -1], [0, -1, 1]])
        nbrs = lat[k] + moves
        ok = np.all((nbrs >= 0) & (nbrs <= resolution), axis=1)
        for i in range(3):
            if m.ideal[i]:
                ok &= nbrs[:, i] != resolution
        spacing = float(np.max(_dist(m.from_barycentric(nbrs[ok] / resolution), best_p)))
        half = 4.0 * spacing
        chart = _Chart(m, best_p)

        inner_steps = 0

        def profile(u):
            nonlocal inner_steps
            _, val, s = _golden_max(lambda v: chart.radius(u, v), -half, half, _GOLDEN_TOL)
            inner_steps += s
            return val

        u, _, outer_steps = _golden_max(profile, -half, half, _GOLDEN_TOL)
        v, val, s = _golden_max(lambda v: chart.radius(u, v), -half, half, _GOLDEN_TOL)
        steps = outer_steps + inner_steps + s
        p = chart.point(u, v)
        if val >= best_r and m.contains(p, _CONTAIN_TOL):
            best_r, best_p = val, p
    grid_max.last_steps = steps
    return best_r, best_p


grid_max.last_steps = 0


@dataclass(frozen=True)
class OracleReport:
    r_oracle: float
    argmax: tuple
    r_solver: float
    abs_diff: float
    grid: int
    refinement_steps: int
    tol: float
    loops: tuple = field(default=())
    side_distances: tuple = field(default=())

    @property
    def passed(self) -> bool:
        return self.abs_diff <= self.tol

    def to_dict(self) -> dict:
        return {
            "r_oracle": self.r_oracle,
            "argmax": list(self.argmax),
            "r_solver": self.r_solver,
            "abs_diff": self.abs_diff,
            "grid": self.grid,
            "refinement_steps": self.refinement_steps,
            "tol": self.tol,
            "loops": list(self.loops),
            "side_distances": list(self.side_distances),
            "pass": self.passed,
        }


def crosscheck(t, resolution: int = 400, tol: float = 1e-3) -> OracleReport:
    """Compare the brute-force maximum with the root of ``F``."""
    if not isinstance(t, TriangleAngles):
        t = TriangleAngles(*t)
    m = place_double_triangle(t)
    r_oracle, p = grid_max(m, resolution)
    steps = grid_max.last_steps
    r_solver = max_disk_radius(CornerWeights.from_angles(t))
    return OracleReport(
        r_oracle=r_oracle,
        argmax=tuple(float(x) for x in p),
        r_solver=r_solver,
        abs_diff=abs(r_oracle - r_solver),
        grid=resolution,
        refinement_steps=steps,
        tol=tol,
        loops=loops_at(m, p),
        side_distances=tuple(float(x) for x in m.side_distance(p)),
    )
