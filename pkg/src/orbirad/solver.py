"""Maximal embedded disk of a triangular surface or Y-piece.

The radius ``r`` of the maximal disk is the root of ``F(r) = f(cosh r)`` with

    f(x) = 2 w3 x^4 - (3x^2 - 1)(sqrt(x^2 - w1^2) sqrt(x^2 - w2^2) - w1 w2)
             - (x^2 - 1) sqrt(4x^2 - 1) (w1 sqrt(x^2 - w2^2) + w2 sqrt(x^2 - w1^2)),

``w1, w2, w3`` being the corner weights (see :mod:`orbirad.corners`). Once
``r`` is known the loop angles and the angle ``theta`` of the central
equilateral triangle follow by back-substitution.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .corners import Boundary, ConeAngle, ConeOrder, CornerSpec, CornerWeights, Cusp
from .errors import (
    DomainError,
    InconsistentSolution,
    InvalidTriangle,
    MultipleRoots,
    NoSignChange,
)
from .hypgeom import DEGENERACY_MARGIN, loop_length

ROOT_WIDTH = 1e-13
RESIDUAL_TOL = 1e-10
GAMMA_CHECK_TOL = 1e-9
SCAN_POINTS = 10_000
# disk area 2 pi (cosh r - 1) < area(S) < 2 pi
CONE_BRACKET_HI = math.acosh(2.0)
_BOUNDARY_HI_CAP = 40.0
_FD_STEP = 1e-6

_OK, _NO_SIGN, _MULTIPLE = 0, 1, 2

__all__ = [
    "Boundary", "ConeAngle", "ConeOrder", "CornerSpec", "CornerWeights", "Cusp",
    "MaxDiskSolution", "F_eval", "f_eval", "loop_length", "max_disk_radii",
    "max_disk_radius", "rho_T", "rho_T_cubic_root", "solve_full",
]


def _as_weights(w) -> CornerWeights:
    return w if isinstance(w, CornerWeights) else CornerWeights(*w)


def _f(w1, w2, w3, x):
    # unchecked, broadcasting kernel of f_eval
    x2 = x * x
    s1 = np.sqrt(np.maximum(x2 - w1 * w1, 0.0))
    s2 = np.sqrt(np.maximum(x2 - w2 * w2, 0.0))
    return (2.0 * w3 * x2 * x2
            - (3.0 * x2 - 1.0) * (s1 * s2 - w1 * w2)
            - (x2 - 1.0) * np.sqrt(4.0 * x2 - 1.0) * (w1 * s2 + w2 * s1))


def f_eval(w, x):
    """Evaluate ``f`` at ``x >= max(1, w1, w2)``; ``w3`` is the distinguished slot."""
    w1, w2, w3 = _as_weights(w)
    x_arr = np.asarray(x, dtype=float)
    floor = max(1.0, w1, w2)
    if np.any(x_arr < floor * (1.0 - 4e-16)):
        raise DomainError(f"f is defined for x >= {floor!r}, got {x!r}")
    out = _f(w1, w2, w3, x_arr)
    return float(out) if out.ndim == 0 else out


def F_eval(w, r):
    """``F(r) = f(cosh r)``. For triangular weights ``F(r) > 0`` exactly when ``r < r(S)``."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0.0):
        raise DomainError(f"F is defined for r >= 0, got {r!r}")
    return f_eval(w, np.cosh(r_arr))


def _canonical(W: np.ndarray) -> np.ndarray:
    # largest weight in the distinguished slot keeps both square roots real at the low end
    return np.sort(W, axis=1)


def _check_triangular(W: np.ndarray) -> None:
    tri = np.all(W <= 1.0, axis=1)
    if np.any(tri):
        sums = np.arccos(np.clip(W[tri], 0.0, 1.0)).sum(axis=1)
        if np.any(sums >= math.pi - DEGENERACY_MARGIN):
            bad = W[tri][np.argmax(sums)]
            raise InvalidTriangle(f"weights {tuple(map(float, bad))} describe a degenerate triangle")


def _F_rows(Wc: np.ndarray, r: np.ndarray) -> np.ndarray:
    return _f(Wc[:, 0], Wc[:, 1], Wc[:, 2], np.cosh(r))


def _roots(W, bracket_hi=None):
    """Vectorised root solve. Returns ``(r, status, iterations)`` for canonically sorted rows."""
    W = np.atleast_2d(np.asarray(W, dtype=float))
    if W.shape[1] != 3 or np.any(~np.isfinite(W)) or np.any(W < 0.0):
        raise DomainError("weights must be finite, non-negative triples")
    _check_triangular(W)
    Wc = _canonical(W)
    n = len(Wc)
    tri = np.all(Wc <= 1.0, axis=1)

    lo = np.arccosh(np.maximum(1.0, Wc[:, 1]))
    if bracket_hi is not None:
        hi = np.full(n, float(bracket_hi))
    else:
        hi = np.where(tri, CONE_BRACKET_HI, np.arccosh(np.maximum(2.0, 2.0 * Wc[:, 2])))
    hi = np.maximum(hi, lo)
    F_lo = _F_rows(Wc, lo)
    F_hi = _F_rows(Wc, hi)
    if bracket_hi is None:
        grow = ~tri & (F_hi >= 0.0)
        while np.any(grow):
            hi[grow] = np.minimum(2.0 * hi[grow] + 1.0, _BOUNDARY_HI_CAP)
            F_hi[grow] = _F_rows(Wc[grow], hi[grow])
            grow &= (F_hi >= 0.0) & (hi < _BOUNDARY_HI_CAP)

    status = np.where((F_lo > 0.0) & (F_hi < 0.0), _OK, _NO_SIGN)

    scan = (~tri) & (status == _OK)
    if np.any(scan):
        idx = np.flatnonzero(scan)
        t = np.linspace(0.0, 1.0, SCAN_POINTS)
        for start in range(0, len(idx), 256):
            rows = idx[start:start + 256]
            R = lo[rows, None] + (hi[rows] - lo[rows])[:, None] * t
            Fg = _f(Wc[rows, 0, None], Wc[rows, 1, None], Wc[rows, 2, None], np.cosh(R))
            sg = np.sign(Fg)
            sg[sg == 0.0] = 1.0
            changes = np.count_nonzero(sg[:, 1:] != sg[:, :-1], axis=1)
            status[rows[changes > 1]] = _MULTIPLE

    ok = status == _OK
    a, b = lo.copy(), hi.copy()
    iterations = 0
    while np.any(ok & (b - a > ROOT_WIDTH)):
        m = 0.5 * (a + b)
        pos = _F_rows(Wc, m) > 0.0
        a = np.where(pos, m, a)
        b = np.where(pos, b, m)
        iterations += 1

    # Newton polish with a centred difference, kept only where it lowers |F|
    r = 0.5 * (a + b)
    for _ in range(2):
        Fr = _F_rows(Wc, r)
        dF = (_F_rows(Wc, r + _FD_STEP) - _F_rows(Wc, np.maximum(r - _FD_STEP, 0.0))) / (2 * _FD_STEP)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = r - Fr / dF
        width = b - a
        inside = np.isfinite(cand) & (cand >= a - width) & (cand <= b + width)
        cand = np.where(inside, cand, r)
        better = np.abs(_F_rows(Wc, cand)) < np.abs(Fr)
        r = np.where(better & ok, cand, r)
        iterations += 1

    r = np.where(ok, r, np.nan)
    return r, status, iterations


def _raise_for(status: int, w) -> None:
    if status == _NO_SIGN:
        raise NoSignChange(f"F does not change sign on the bracket for weights {tuple(map(float, w))}")
    if status == _MULTIPLE:
        raise MultipleRoots(f"F has several sign changes for weights {tuple(map(float, w))}")


def max_disk_radius(w, bracket_hi: float | None = None) -> float:
    """Maximum injectivity radius for corner weights ``w``.

    Cone and cusp weights use the bracket ``(0, arccosh 2]``. Weights above 1
    (geodesic boundary) get a bracket grown until ``F`` turns negative, and
    the bracket is scanned for extra sign changes, which raise
    :class:`MultipleRoots`.
    """
    w = _as_weights(w)
    r, status, _ = _roots([tuple(w)], bracket_hi)
    _raise_for(int(status[0]), w)
    return float(r[0])


def max_disk_radii(W, bracket_hi: float | None = None, *, strict: bool = True):
    """Vectorised :func:`max_disk_radius` over an ``(n, 3)`` array of weights.

    With ``strict=False`` failing rows come back as NaN alongside a status
    array (0 solved, 1 no sign change, 2 multiple roots).
    """
    r, status, _ = _roots(W, bracket_hi)
    if strict:
        bad = np.flatnonzero(status)
        if len(bad):
            _raise_for(int(status[bad[0]]), np.atleast_2d(W)[bad[0]])
        return r
    return r, status


@dataclass(frozen=True)
class MaxDiskSolution:
    weights: tuple
    r: float
    alpha_tilde: float
    beta_tilde: float
    gamma_tilde: float
    theta: float
    residual_max: float
    iterations: int

    @property
    def loop_angles(self) -> tuple[float, float, float]:
        return (self.alpha_tilde, self.beta_tilde, self.gamma_tilde)

    def residuals(self) -> tuple[float, ...]:
        return system_residuals(self.weights, self.r, self.loop_angles, self.theta)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["weights"] = list(self.weights)
        return d


def system_residuals(w, r, loop_angles, theta) -> tuple[float, ...]:
    """Residuals of the five equations: three loop-angle laws, the equilateral law, the angle sum."""
    x = math.cosh(r)
    res = [wi - x * math.sin(a / 2.0) for wi, a in zip(w, loop_angles)]
    res.append(x - math.sqrt(1.0 / (2.0 * (1.0 - math.cos(theta)))))
    res.append(sum(loop_angles) + 3.0 * theta - 2.0 * math.pi)
    return tuple(res)


def solve_full(w) -> MaxDiskSolution:
    """Radius, loop angles at the disk center, and the equilateral angle ``theta``."""
    w = _as_weights(w)
    r, status, iterations = _roots([tuple(w)])
    _raise_for(int(status[0]), w)
    r = float(r[0])
    x = math.cosh(r)

    order = sorted(range(3), key=lambda i: w[i])
    i3 = order[2]
    angles = [0.0, 0.0, 0.0]
    for i in order[:2]:
        angles[i] = 2.0 * math.asin(min(w[i] / x, 1.0))
    theta = math.acos(1.0 - 1.0 / (2.0 * x * x))
    angles[i3] = 2.0 * math.pi - angles[order[0]] - angles[order[1]] - 3.0 * theta
    if not (0.0 <= angles[i3] < 2.0 * math.pi) or abs(math.sin(angles[i3] / 2.0) - w[i3] / x) > GAMMA_CHECK_TOL:
        raise InconsistentSolution(
            f"angle-sum loop angle {angles[i3]!r} disagrees with sin law for weights {tuple(map(float, w))}")

    res = system_residuals(w, r, angles, theta)
    return MaxDiskSolution(
        weights=tuple(w), r=r, alpha_tilde=angles[0], beta_tilde=angles[1], gamma_tilde=angles[2],
        theta=theta, residual_max=max(abs(v) for v in res), iterations=iterations,
    )


def _cubic(t: float) -> float:
    return (4.0 - math.cos(math.pi / 7) ** 2) * t ** 3 - 5.0 * t * t + 2.0 * t - 0.25


def rho_T_cubic_root() -> float:
    """Unique real root ``t0`` of ``(4 - cos^2(pi/7)) t^3 - 5 t^2 + 2 t - 1/4``, by bisection on ``[1, 2]``."""
    lo, hi = 1.0, 2.0
    while True:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            return mid
        if _cubic(mid) < 0.0:
            lo = mid
        else:
            hi = mid


def rho_T() -> float:
    """Maximum injectivity radius of the (2, 3, 7) orbifold, ``arccosh(sqrt(t0))``."""
    return math.acosh(math.sqrt(rho_T_cubic_root()))
