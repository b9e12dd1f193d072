"""Hyperbolic trigonometry and the hyperboloid model.

Points are stored as numpy arrays ``(x0, x1, x2)`` on the upper sheet of
``x0**2 - x1**2 - x2**2 = 1``; geodesics are stored by unit spacelike
normals ``n`` (``<n, n> = -1``), the geodesic being ``{x : <x, n> = 0}``.
Functions that take a single point validate it; the vectorised helpers
with a leading underscore do not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .corners import CornerSpec, Cusp, corner_from_angle
from .errors import (
    DegenerateTriangle,
    IdealVertex,
    InvalidTriangle,
    NegativeDistance,
    NonPositiveLength,
    OffModel,
)

HYPERBOLOID_TOL = 1e-12
CLAMP_TOL = 1e-9
# angle sums this close to pi describe a collapsed surface
DEGENERACY_MARGIN = 1e-9

J = np.diag([1.0, -1.0, -1.0])


def minkowski(p, q):
    """Lorentzian product ``p0 q0 - p1 q1 - p2 q2`` over the last axis."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return p[..., 0] * q[..., 0] - p[..., 1] * q[..., 1] - p[..., 2] * q[..., 2]


def _clamp(value: float, lo: float, hi: float, what: str) -> float:
    if value < lo - CLAMP_TOL or value > hi + CLAMP_TOL:
        raise DegenerateTriangle(f"{what} = {value!r} outside [{lo}, {hi}]")
    return min(max(value, lo), hi)


@dataclass(frozen=True)
class TriangleAngles:
    """Angles of a hyperbolic triangle, each in ``[0, pi/2]``; 0 marks an ideal vertex."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for a in self:
            if not math.isfinite(a) or a < 0.0 or a > math.pi / 2:
                raise InvalidTriangle(f"angles must lie in [0, pi/2], got {tuple(self)}")
        if sum(self) >= math.pi - DEGENERACY_MARGIN:
            raise InvalidTriangle(f"angle sum {sum(self)!r} is not below pi")

    def __iter__(self):
        return iter((self.alpha, self.beta, self.gamma))

    def __getitem__(self, i):
        return (self.alpha, self.beta, self.gamma)[i]

    @classmethod
    def from_orders(cls, p, q, r) -> "TriangleAngles":
        """Triangle of the orbifold with cone orders ``p, q, r`` (``math.inf`` for cusps)."""
        return cls(*(0.0 if k == math.inf else math.pi / k for k in (p, q, r)))


def triangle_sides_from_angles(t: TriangleAngles) -> tuple[float, float, float]:
    """Side lengths ``(a, b, c)``, side ``a`` opposite ``alpha`` and so on."""
    if not isinstance(t, TriangleAngles):
        t = TriangleAngles(*t)
    if min(t) == 0.0:
        raise IdealVertex("a triangle with an ideal vertex has infinite sides")
    ang = tuple(t)
    sides = []
    for i in range(3):
        x, y, z = ang[i], ang[(i + 1) % 3], ang[(i + 2) % 3]
        cosh_side = (math.cos(x) + math.cos(y) * math.cos(z)) / (math.sin(y) * math.sin(z))
        sides.append(math.acosh(max(cosh_side, 1.0)))
    return tuple(sides)


def inscribed_radius(t0: float, t1: float, t2: float, *, general: bool = False) -> float:
    """Radius of the disk inscribed in the triangle with angles ``t0, t1, t2``.

    With ``t0 == 0`` the closed form
    ``artanh((cos t1 + cos t2) / (2 sqrt((1 + cos t1)(1 + cos t2))))`` is used
    unless ``general`` is set, in which case the symmetric identity

        tanh^2 r = (c0^2 + c1^2 + c2^2 + 2 c0 c1 c2 - 1) / (2 (1 + c0)(1 + c1)(1 + c2))

    is evaluated for every input.
    """
    angles = (t0, t1, t2)
    if any(not math.isfinite(a) or a < 0.0 or a >= math.pi for a in angles):
        raise InvalidTriangle(f"angles must lie in [0, pi), got {angles}")
    if sum(angles) >= math.pi - DEGENERACY_MARGIN:
        raise InvalidTriangle(f"angle sum {sum(angles)!r} is not below pi")
    c0, c1, c2 = (math.cos(a) for a in angles)
    if t0 == 0.0 and not general:
        return math.atanh((c1 + c2) / (2.0 * math.sqrt((1.0 + c1) * (1.0 + c2))))
    num = c0 * c0 + c1 * c1 + c2 * c2 + 2.0 * c0 * c1 * c2 - 1.0
    den = 2.0 * (1.0 + c0) * (1.0 + c1) * (1.0 + c2)
    return math.atanh(math.sqrt(max(num, 0.0) / den))


def horocycle_embedded_length(t1: float, t2: float) -> float:
    """Length of the embedded horocycle at the cusp of the surface with angles ``(0, t1, t2)``.

    ``h = 4 / sqrt(1 + 1/R)`` where ``R`` is the inradius of the triangle with
    angles ``0, t1, t2``. ``t1`` or ``t2`` may be 0 (further cusps).
    """
    for t in (t1, t2):
        if not math.isfinite(t) or t < 0.0 or t > math.pi / 2:
            raise InvalidTriangle(f"angles must lie in [0, pi/2], got {(t1, t2)}")
    R = inscribed_radius(0.0, t1, t2)
    return 4.0 / math.sqrt(1.0 + 1.0 / R)


def collar_half_width(L):
    """Half-width ``arcsinh(1 / sinh(L/2))`` of the standard collar of a geodesic of length ``L``."""
    L_arr = np.asarray(L, dtype=float)
    if np.any(~(L_arr > 0.0)):
        raise NonPositiveLength(f"collar of a non-positive length {L!r}")
    w = np.arcsinh(1.0 / np.sinh(L_arr / 2.0))
    return float(w) if w.ndim == 0 else w


def as_hpoint(p) -> np.ndarray:
    """Validate and return ``p`` as a point of the hyperboloid."""
    p = np.asarray(p, dtype=float)
    if p.shape != (3,) or not np.all(np.isfinite(p)):
        raise OffModel(f"expected three finite coordinates, got {p!r}")
    norm = float(minkowski(p, p))
    if p[0] <= 0.0 or abs(norm - 1.0) > HYPERBOLOID_TOL * max(1.0, p[0] * p[0]):
        raise OffModel(f"point {p!r} is off the hyperboloid (<p,p> = {norm!r})")
    return p


def hpoint(x1: float, x2: float) -> np.ndarray:
    """Lift the spatial coordinates ``(x1, x2)`` to the hyperboloid."""
    return np.array([math.sqrt(1.0 + x1 * x1 + x2 * x2), x1, x2])


def _dist(P, q):
    # 2 asinh(|P - q| / 2) keeps full relative precision for nearby points
    d = np.asarray(P, dtype=float) - np.asarray(q, dtype=float)
    chord2 = -minkowski(d, d)
    return 2.0 * np.arcsinh(np.sqrt(np.maximum(chord2, 0.0)) / 2.0)


def hyp_distance(p, q) -> float:
    """Hyperbolic distance between two points of the hyperboloid."""
    return float(_dist(as_hpoint(p), as_hpoint(q)))


def half_angle_sine(a: float, b: float, c: float) -> float:
    """``sin(A/2)`` for the angle ``A`` opposite side ``a``, via
    ``sin^2(A/2) = (cosh a - cosh(b - c)) / (2 sinh b sinh c)``.

    The numerator is evaluated as ``2 sinh((a+b-c)/2) sinh((a-b+c)/2)`` so
    short sides keep their precision."""
    for s in (a, b, c):
        if not (s > 0.0) or not math.isfinite(s):
            raise NonPositiveLength(f"side lengths must be positive, got {(a, b, c)}")
    s2 = math.sinh((a + b - c) / 2.0) * math.sinh((a - b + c) / 2.0) / (math.sinh(b) * math.sinh(c))
    return math.sqrt(_clamp(s2, 0.0, 1.0, "sin^2(A/2)"))


def angle_from_sides(a: float, b: float, c: float) -> float:
    """Angle opposite side ``a`` in the triangle with sides ``a, b, c``."""
    s = half_angle_sine(a, b, c)
    if s == 0.0 and a > abs(b - c) + CLAMP_TOL or s == 1.0 and a < b + c - CLAMP_TOL:
        raise DegenerateTriangle(f"inconsistent sides {(a, b, c)}")
    return 2.0 * math.asin(s)


def to_klein(P):
    P = np.asarray(P, dtype=float)
    return P[..., 1:] / P[..., :1]


def from_klein(K):
    K = np.asarray(K, dtype=float)
    s = np.sqrt(1.0 - np.sum(K * K, axis=-1, keepdims=True))
    return np.concatenate([np.ones_like(s), K], axis=-1) / s


def to_poincare(P):
    P = np.asarray(P, dtype=float)
    return P[..., 1:] / (1.0 + P[..., :1])


def reflect(P, n):
    """Reflect points across the geodesic with unit normal ``n``."""
    P = np.asarray(P, dtype=float)
    return P + 2.0 * minkowski(P, n)[..., None] * np.asarray(n)


def exp_map(p, v):
    """Point reached from ``p`` along the tangent vector ``v`` for time 1."""
    speed = math.sqrt(max(-float(minkowski(v, v)), 0.0))
    if speed == 0.0:
        return np.array(p, dtype=float)
    return math.cosh(speed) * np.asarray(p) + (math.sinh(speed) / speed) * np.asarray(v)


def tangent_frame(p):
    """Orthonormal tangent vectors ``(e1, e2)`` at ``p``."""
    p = np.asarray(p, dtype=float)
    frame = []
    for v in (np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0])):
        t = v - minkowski(v, p) * p
        for e in frame:
            t = t + minkowski(t, e) * e
        frame.append(t / math.sqrt(-minkowski(t, t)))
    return frame[0], frame[1]


def boost_to_origin(x) -> np.ndarray:
    """Lorentz boost taking the point ``x`` to ``(1, 0, 0)``."""
    x = np.asarray(x, dtype=float)
    v = x[1:]
    vv = float(v @ v)
    B = np.eye(3)
    B[0, 0] = x[0]
    B[0, 1:] = -v
    B[1:, 0] = -v
    if vv > 0.0:
        B[1:, 1:] += (x[0] - 1.0) * np.outer(v, v) / vv
    return B


@dataclass(frozen=True, eq=False)
class SurfaceModel:
    """One of the two triangles of a triangular surface, placed in the hyperboloid.

    ``normals[i]`` is the inward unit normal of the side opposite vertex ``i``
    (interior points have ``<x, n> > 0``). Ideal vertices are stored as null
    vectors with ``x0 = 1``; for those, ``horocycles[i]`` is the reference
    horocycle length on the surface and ``horocycle_levels[i]`` the value of
    ``<x, vertex>`` along it. The incenter sits at ``(1, 0, 0)``.
    """

    angles: TriangleAngles
    corners: tuple
    vertices: np.ndarray
    ideal: tuple
    normals: np.ndarray
    horocycles: tuple = field(default=(None, None, None))
    horocycle_levels: tuple = field(default=(None, None, None))

    def side_distance(self, P):
        """Signed distances from ``P`` to the three sides, positive inside."""
        P = np.asarray(P, dtype=float)
        return np.arcsinh(P @ (J @ self.normals.T))

    def contains(self, P, tol: float = 0.0):
        return np.all(self.side_distance(P) >= -tol, axis=-1)

    def corner_distance(self, P):
        """``dist`` to each corner: point distance, or signed horocycle distance at cusps."""
        P = np.asarray(P, dtype=float)
        out = np.empty(P.shape[:-1] + (3,))
        for i in range(3):
            v = self.vertices[i]
            if self.ideal[i]:
                out[..., i] = np.log(minkowski(P, v) / self.horocycle_levels[i])
            else:
                out[..., i] = _dist(P, v)
        return out

    def from_barycentric(self, lam):
        """Points with Klein-model barycentric coordinates ``lam`` (last axis of size 3)."""
        lam = np.asarray(lam, dtype=float)
        K = lam @ to_klein(self.vertices)
        return from_klein(K)

    def barycentric(self, P):
        """Klein-model barycentric coordinates of ``P``."""
        V = to_klein(self.vertices)
        M = np.vstack([V.T, np.ones(3)])
        K = to_klein(np.asarray(P, dtype=float))
        rhs = np.concatenate([K, np.ones(K.shape[:-1] + (1,))], axis=-1)
        return np.linalg.solve(M, rhs[..., None])[..., 0] if rhs.ndim > 1 else np.linalg.solve(M, rhs)

    def holonomy(self, i: int) -> np.ndarray:
        """Orientation-preserving isometry fixing corner ``i``: reflection in one adjacent side, then the other."""
        j, k = (i + 1) % 3, (i + 2) % 3
        Rj = np.eye(3) + 2.0 * np.outer(self.normals[j], J @ self.normals[j])
        Rk = np.eye(3) + 2.0 * np.outer(self.normals[k], J @ self.normals[k])
        return Rj @ Rk


def _gram(angles) -> np.ndarray:
    al, be, ga = angles
    return np.array([
        [-1.0, math.cos(ga), math.cos(be)],
        [math.cos(ga), -1.0, math.cos(al)],
        [math.cos(be), math.cos(al), -1.0],
    ])


def place_double_triangle(t) -> SurfaceModel:
    """Explicit coordinates for a triangle of the surface ``S_{alpha,beta,gamma}``.

    The side normals are recovered from their Gram matrix
    ``<n_i, n_j> = cos(angle between the sides)`` and the picture is boosted
    so the incenter lands on the origin.
    """
    if not isinstance(t, TriangleAngles):
        t = TriangleAngles(*t)
    G = _gram(t)
    lam, Q = np.linalg.eigh(G)
    order = [2, 0, 1]
    if not (lam[2] > 0.0 > lam[1]):
        raise InvalidTriangle(f"angles {tuple(t)} do not bound a hyperbolic triangle")
    N = np.sqrt(np.abs(lam[order]))[:, None] * Q[:, order].T  # columns are normals

    y = J @ np.linalg.solve(N.T, np.ones(3))
    if y[0] < 0.0:
        y, N = -y, -N
    center = y / math.sqrt(float(minkowski(y, y)))
    B = boost_to_origin(center)
    N = B @ N
    normals = np.ascontiguousarray(N.T)

    ideal = tuple(a == 0.0 for a in t)
    vertices = np.empty((3, 3))
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        v = J @ np.cross(normals[j], normals[k])
        if v[0] < 0.0:
            v = -v
        if ideal[i]:
            vertices[i] = v / v[0]
        else:
            vertices[i] = v / math.sqrt(float(minkowski(v, v)))

    horocycles = [None, None, None]
    levels = [None, None, None]
    for i in range(3):
        if not ideal[i]:
            continue
        j, k = (i + 1) % 3, (i + 2) % 3
        h = horocycle_embedded_length(t[j], t[k])
        e = vertices[i]
        # points at level <x, e> = 1 on the two sides through the cusp
        pts = []
        for V in (vertices[j], vertices[k]):
            ev = float(minkowski(e, V))
            b = 1.0 / ev
            a = (1.0 - b * b * float(minkowski(V, V))) / (2.0 * b * ev)
            pts.append(a * e + b * V)
        arc_at_one = 2.0 * math.sinh(float(_dist(pts[0], pts[1])) / 2.0)
        horocycles[i] = h
        # the triangle carries half of the surface horocycle
        levels[i] = (h / 2.0) / arc_at_one

    for arr in (vertices, normals):
        arr.flags.writeable = False
    corners = tuple(corner_from_angle(a) for a in t)
    return SurfaceModel(t, corners, vertices, ideal, normals, tuple(horocycles), tuple(levels))


def loop_length(corner: CornerSpec, dist: float, *, horocycle: float | None = None) -> float:
    """Length of the shortest loop around ``corner`` based at a point at distance ``dist``.

    Cone angle ``alpha``: ``2 asinh(sin(alpha) sinh(dist))`` (``2 dist`` at
    ``alpha = pi/2``). Cusp: ``dist`` is the signed distance to the horocycle
    of length ``horocycle`` (positive outside the horoball) and the loop is
    ``2 asinh(exp(dist) * horocycle / 2)``. Boundary of length ``L``: ``dist``
    is the distance to the geodesic, ``sinh(l/2) = cosh(dist) sinh(L/2)``.
    """
    if isinstance(corner, Cusp):
        if horocycle is None or not horocycle > 0.0:
            raise NonPositiveLength("a cusp loop needs the reference horocycle length")
        return 2.0 * math.asinh(math.exp(dist) * horocycle / 2.0)
    if dist < 0.0:
        raise NegativeDistance(f"distance to a corner cannot be negative, got {dist!r}")
    if corner.angle is None:
        return 2.0 * math.asinh(math.cosh(dist) * math.sinh(corner.length / 2.0))
    if corner.angle == math.pi / 2:
        return 2.0 * dist
    return 2.0 * math.asinh(math.sin(corner.angle) * math.sinh(dist))
