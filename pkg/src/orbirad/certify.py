"""Lower-bound certificates for the maximum injectivity radius of orbifolds.

Every hyperbolic orbifold without boundary satisfies ``r(S) >= rho_T``, where
``rho_T`` is attained only by the (2, 3, 7) orbifold. :func:`certify`
classifies a signature into the branch of the argument that applies to it and
returns the numeric inequalities that branch relies on, each evaluated in
floating point. Order lists use ``math.inf`` for cusps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .corners import ConeOrder, CornerWeights, Cusp
from .errors import DomainError, NonHyperbolic, WrongSignature
from .hypgeom import TriangleAngles, triangle_sides_from_angles
from .solver import F_eval, max_disk_radii, max_disk_radius, rho_T, rho_T_cubic_root

EQUALITY_TOL = 1e-10

__all__ = [
    "Branch", "Certificate", "Check", "Constants", "OrbifoldSignature", "Verdict",
    "averaging_bound", "certify", "certify_triangles", "classify", "constants",
    "disk_radius_from_area", "orbifold_area", "special_case_2223_certificate",
    "triangle_F", "F_237",
]


class Branch(str, Enum):
    TRIANGULAR = "Triangular"
    YPIECE = "YPiece"
    AVERAGING = "Averaging"
    EXCEPTIONAL_CUT5 = "ExceptionalCut5"
    EXCEPTIONAL_CUT4 = "ExceptionalCut4"
    SPECIAL_CASE_2223 = "SpecialCase2223"
    TORUS_PENTAGON = "TorusPentagon"


class Verdict(str, Enum):
    EQUALS_RHO_T = "equals_rho_T"
    GREATER_THAN_RHO_T = "greater_than_rho_T"


@dataclass(frozen=True)
class Constants:
    rho_T: float
    rho_P: float
    rho_Y: float
    rho_S: float
    t0: float

    def __post_init__(self):
        if not (self.rho_T < self.rho_P < self.rho_Y < self.rho_S):
            raise AssertionError(f"constant ordering violated: {self}")


def constants() -> Constants:
    return Constants(
        rho_T=rho_T(),
        rho_P=0.5 * math.log((9.0 + 4.0 * math.sqrt(2.0)) / 7.0),
        rho_Y=0.5 * math.log(3.0),
        rho_S=math.asinh(2.0 / math.sqrt(3.0)),
        t0=rho_T_cubic_root(),
    )


CONSTANTS = constants()

_W237 = CornerWeights(0.0, 0.5, math.cos(math.pi / 7))
_T237 = TriangleAngles(math.pi / 2, math.pi / 3, math.pi / 7)


def triangle_F(t, r):
    """``F`` for the triangle with angles ``t``, largest weight in the distinguished slot."""
    if not isinstance(t, TriangleAngles):
        t = TriangleAngles(*t)
    w = CornerWeights(*sorted(CornerWeights.from_angles(t)))
    return F_eval(w, r)


def F_237(r):
    """``F`` of the (2, 3, 7) triangle; negative exactly when ``r > rho_T``."""
    return F_eval(_W237, r)


@dataclass(frozen=True)
class Check:
    name: str
    lhs: float
    relation: str
    rhs: float
    passed: bool

    @classmethod
    def compare(cls, name: str, lhs: float, relation: str, rhs: float, tol: float | None = None) -> "Check":
        """Evaluate ``lhs relation rhs``.

        ``tol`` is the equality tolerance for ``=`` (default
        :data:`EQUALITY_TOL`) and the slack allowed by ``<=`` and ``>=``
        (default none). Strict relations never take slack.
        """
        lhs, rhs = float(lhs), float(rhs)
        eq_tol = EQUALITY_TOL if tol is None else tol
        slack = 0.0 if tol is None else tol
        ok = {
            "<": lhs < rhs,
            ">": lhs > rhs,
            "<=": lhs <= rhs + slack,
            ">=": lhs >= rhs - slack,
            "=": abs(lhs - rhs) <= eq_tol,
        }[relation]
        return cls(name, lhs, relation, rhs, bool(ok))

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "relation": self.relation,
                "rhs": self.rhs, "pass": self.passed}


@dataclass(frozen=True)
class Certificate:
    branch: Branch
    checks: tuple
    verdict: Verdict
    signature: "OrbifoldSignature | None" = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        out = {}
        if self.signature is not None:
            out["genus"] = self.signature.genus
            out["orders"] = [_order_json(p) for p in self.signature.orders]
        out.update({
            "branch": self.branch.value,
            "checks": [c.to_dict() for c in self.checks],
            "verdict": self.verdict.value,
            "pass": self.passed,
        })
        return out


def _order_json(p):
    return "inf" if p == math.inf else int(p)


def _inv(p) -> Fraction:
    return Fraction(0) if p == math.inf else Fraction(1, int(p))


@dataclass(frozen=True)
class OrbifoldSignature:
    """Genus and cone orders of a closed orbifold; ``math.inf`` marks a cusp. Orders are kept sorted."""

    genus: int
    orders: tuple = field(default=())

    def __post_init__(self):
        if isinstance(self.genus, bool) or int(self.genus) != self.genus or self.genus < 0:
            raise DomainError(f"genus must be a non-negative integer, got {self.genus!r}")
        clean = []
        for p in self.orders:
            if p == math.inf:
                clean.append(math.inf)
            elif isinstance(p, bool) or int(p) != p or p < 2:
                raise DomainError(f"cone orders must be integers >= 2 or inf, got {p!r}")
            else:
                clean.append(int(p))
        object.__setattr__(self, "genus", int(self.genus))
        object.__setattr__(self, "orders", tuple(sorted(clean)))
        if self._euler_term() <= 0:
            raise NonHyperbolic(f"signature (g={self.genus}; {self.orders}) is not hyperbolic")

    @property
    def n(self) -> int:
        return len(self.orders)

    def _euler_term(self) -> Fraction:
        # minus the orbifold Euler characteristic
        return 2 * self.genus - 2 + sum((1 - _inv(p) for p in self.orders), Fraction(0))

    def inverse_sum(self) -> Fraction:
        return sum((_inv(p) for p in self.orders), Fraction(0))


def orbifold_area(s: OrbifoldSignature) -> float:
    """Gauss-Bonnet area ``2 pi (2g - 2 + sum(1 - 1/p))``."""
    return 2.0 * math.pi * float(s._euler_term())


def _exceptional(s: OrbifoldSignature) -> bool:
    # average triangle area below pi/4, in exact arithmetic
    if s.n == 4:
        return s.inverse_sum() > Fraction(3, 2)
    return s.inverse_sum() > Fraction(9, 4)


def classify(s: OrbifoldSignature) -> Branch:
    g, n = s.genus, s.n
    if g == 0 and n == 3:
        return Branch.TRIANGULAR
    if g == 1 and n == 1:
        return Branch.TORUS_PENTAGON
    if (g > 0 and 3 * g + n >= 5) or (g == 0 and n >= 6):
        return Branch.YPIECE
    if g == 0 and n in (4, 5):
        if s.orders == (2, 2, 2, 3):
            return Branch.SPECIAL_CASE_2223
        if not _exceptional(s):
            return Branch.AVERAGING
        return Branch.EXCEPTIONAL_CUT4 if n == 4 else Branch.EXCEPTIONAL_CUT5
    raise NonHyperbolic(f"no branch for signature (g={g}; {s.orders})")  # pragma: no cover


def averaging_bound(s: OrbifoldSignature, branch: Branch | None = None) -> float:
    """Guaranteed lower bound on the area of one triangle of the cut.

    ``branch`` selects the cut; by default the branch :func:`classify` picks.
    Generic cut: ``area / (2(n - 2))``. Five points of order two or three
    (with at most one three): ``area / 4``. Four points ``(2, 2, p3, p4)``:
    ``pi - pi/p3 - pi/p4``.
    """
    if s.genus != 0 or s.n not in (4, 5):
        raise WrongSignature(f"averaging applies to genus 0 with 4 or 5 points, got (g={s.genus}; {s.orders})")
    branch = classify(s) if branch is None else branch
    area = orbifold_area(s)
    if branch is Branch.AVERAGING:
        return area / (2 * (s.n - 2))
    if branch is Branch.EXCEPTIONAL_CUT5:
        if s.n != 5:
            raise WrongSignature("five-point cut needs five cone points")
        return area / 4.0
    if branch is Branch.EXCEPTIONAL_CUT4:
        if s.n != 4 or s.orders[:2] != (2, 2):
            raise WrongSignature("four-point cut needs two points of order two")
        p3, p4 = s.orders[2], s.orders[3]
        return math.pi - math.pi * float(_inv(p3)) - math.pi * float(_inv(p4))
    raise WrongSignature(f"no averaging bound for branch {branch.value}")


def disk_radius_from_area(area: float) -> float:
    """Lower bound ``arctanh(sin(area/2) / 2)`` on the inradius of a triangle of the given area."""
    if not (0.0 < area < 2.0 * math.pi):
        raise DomainError(f"area must lie in (0, 2 pi), got {area!r}")
    return math.atanh(0.5 * math.sin(0.5 * area))


def _radius_checks(label: str, radius: float) -> list[Check]:
    return [
        Check.compare(f"F_237({label})", F_237(radius), "<", 0.0),
        Check.compare(f"{label} > rho_T", radius, ">", CONSTANTS.rho_T),
    ]


def special_case_2223_certificate() -> Certificate:
    """Certificate for the sphere with cone points of orders 2, 2, 2, 3.

    The quadrilateral cut has sides ``lam >= mu`` with
    ``tanh(lam) tanh(mu) = 1/2``; the (2, 3, 7) triangle with sides ``a, c``
    fits inside it and its distance to the far sides exceeds ``rho_T``.
    """
    a, _, c = triangle_sides_from_angles(_T237)
    half_log3 = 0.5 * math.log(3.0)
    lam_min = math.atanh(1.0 / math.sqrt(2.0))
    checks = [
        Check.compare("tanh(log3/2)", math.tanh(half_log3), "=", 0.5, 1e-15),
        Check.compare("tanh(lam_min)^2", math.tanh(lam_min) ** 2, "=", 0.5, 1e-15),
    ]
    # lam >= mu and tanh(lam) < 1 bound both sides from below; sample the admissible lam
    tl = np.linspace(1.0 / math.sqrt(2.0), 1.0, 2001)[:-1]
    mu = np.arctanh(0.5 / tl)
    lam = np.arctanh(tl)
    checks += [
        Check.compare("min mu over lam >= mu", float(mu.min()), ">", half_log3),
        Check.compare("min lam over lam >= mu", float(lam.min()), ">=", lam_min),
        Check.compare("log3/2 > c", half_log3, ">", c),
        Check.compare("atanh(1/sqrt2) > a", lam_min, ">", a),
    ]
    checks += _radius_checks("log3/2 - c", half_log3 - c)
    checks += _radius_checks("atanh(1/sqrt2) - a", lam_min - a)
    return Certificate(Branch.SPECIAL_CASE_2223, tuple(checks), Verdict.GREATER_THAN_RHO_T)


def _corner(p):
    return Cusp() if p == math.inf else ConeOrder(p)


def _is_237(orders) -> bool:
    return tuple(orders) == (2, 3, 7)


def _triangular_checks(orders, r: float) -> tuple[list[Check], Verdict]:
    if _is_237(orders):
        return [Check.compare("r = rho_T", r, "=", CONSTANTS.rho_T)], Verdict.EQUALS_RHO_T
    return _radius_checks("r", r), Verdict.GREATER_THAN_RHO_T


def certify(s: OrbifoldSignature) -> Certificate:
    """Classify ``s`` and evaluate the inequalities of its branch."""
    branch = classify(s)
    if branch is Branch.TRIANGULAR:
        w = CornerWeights.from_corners(_corner(p) for p in s.orders)
        r = max_disk_radius(w)
        checks, verdict = _triangular_checks(s.orders, r)
        return Certificate(branch, tuple(checks), verdict, s)
    if branch is Branch.YPIECE:
        checks = _radius_checks("rho_Y", CONSTANTS.rho_Y)
    elif branch is Branch.TORUS_PENTAGON:
        checks = _radius_checks("rho_P", CONSTANTS.rho_P)
    elif branch is Branch.SPECIAL_CASE_2223:
        cert = special_case_2223_certificate()
        return Certificate(branch, cert.checks, cert.verdict, s)
    else:
        bound = averaging_bound(s, branch)
        checks = [Check.compare("triangle area bound >= pi/4", bound, ">=", math.pi / 4, 0.0)]
        checks += _radius_checks("disk radius from area", disk_radius_from_area(bound))
    return Certificate(branch, tuple(checks), Verdict.GREATER_THAN_RHO_T, s)


def certify_triangles(triples):
    """Vectorised triangular certification.

    Returns ``(radii, verdicts, passed)`` for a sequence of hyperbolic order
    triples, equal to what :func:`certify` gives one triple at a time.
    """
    sigs = [OrbifoldSignature(0, t) for t in triples]
    W = np.array([[_corner(p).weight for p in s.orders] for s in sigs], dtype=float)
    radii = max_disk_radii(W) if len(W) else np.empty(0)
    verdicts, passed = [], []
    for s, r in zip(sigs, radii):
        checks, verdict = _triangular_checks(s.orders, float(r))
        verdicts.append(verdict)
        passed.append(all(c.passed for c in checks))
    return radii, verdicts, passed
