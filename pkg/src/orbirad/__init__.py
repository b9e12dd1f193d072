"""Maximum injectivity radius of hyperbolic triangular surfaces and orbifolds."""

from .certify import OrbifoldSignature, certify, classify, constants
from .corners import Boundary, ConeAngle, ConeOrder, CornerWeights, Cusp, parse_corner
from .errors import OrbiradError
from .hypgeom import TriangleAngles, place_double_triangle
from .oracle import crosscheck, grid_max, inj_radius_at
from .solver import F_eval, max_disk_radius, rho_T, solve_full
from .yamada import rho_S

__version__ = "0.1.0"

__all__ = [
    "Boundary", "ConeAngle", "ConeOrder", "CornerWeights", "Cusp", "F_eval", "OrbifoldSignature",
    "OrbiradError", "TriangleAngles", "certify", "classify", "constants", "crosscheck", "grid_max",
    "inj_radius_at", "max_disk_radius", "parse_corner", "place_double_triangle", "rho_S", "rho_T",
    "solve_full",
]
