"""Corner kinds of a triangular surface or pair of pants, and their weights.

Every corner enters the maximal-disk system through one scalar, the
constant on the left of ``w = cosh(r) * sin(loop_angle / 2)``:

* cone point with triangle angle ``alpha`` (``alpha <= pi/2``): ``cos(alpha)``
* cone point of order ``k``: ``cos(pi/k)``
* cusp: ``1``
* geodesic boundary of length ``L``: ``cosh(L/2)``
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import DomainError, NonPositiveLength


@dataclass(frozen=True)
class ConeOrder:
    k: int

    def __post_init__(self):
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 2:
            raise DomainError(f"cone order must be an integer >= 2, got {self.k!r}")

    @property
    def angle(self) -> float:
        return math.pi / self.k

    @property
    def weight(self) -> float:
        # cos(pi/2) is 6e-17 in binary64; order two is exactly zero
        return 0.0 if self.k == 2 else math.cos(math.pi / self.k)

    def label(self) -> str:
        return str(self.k)


@dataclass(frozen=True)
class ConeAngle:
    alpha: float

    def __post_init__(self):
        if not (0.0 < self.alpha <= math.pi / 2) or not math.isfinite(self.alpha):
            raise DomainError(f"cone angle must lie in (0, pi/2], got {self.alpha!r}")

    @property
    def angle(self) -> float:
        return self.alpha

    @property
    def weight(self) -> float:
        return 0.0 if self.alpha == math.pi / 2 else math.cos(self.alpha)

    def label(self) -> str:
        return f"angle:{self.alpha!r}"


@dataclass(frozen=True)
class Cusp:
    @property
    def angle(self) -> float:
        return 0.0

    @property
    def weight(self) -> float:
        return 1.0

    def label(self) -> str:
        return "cusp"


@dataclass(frozen=True)
class Boundary:
    length: float

    def __post_init__(self):
        if not (self.length > 0.0) or not math.isfinite(self.length):
            raise NonPositiveLength(f"boundary length must be positive, got {self.length!r}")

    @property
    def angle(self):
        return None

    @property
    def weight(self) -> float:
        return math.cosh(self.length / 2)

    def label(self) -> str:
        return f"boundary:{self.length!r}"


CornerSpec = Union[ConeOrder, ConeAngle, Cusp, Boundary]


def corner_from_angle(alpha: float) -> CornerSpec:
    """Corner kind of a triangle vertex with angle ``alpha`` (0 means ideal)."""
    if alpha == 0.0:
        return Cusp()
    return ConeAngle(alpha)


def parse_corner(text: str) -> CornerSpec:
    """Parse ``7``, ``cusp``, ``angle:<radians>`` or ``boundary:<length>``."""
    s = text.strip().lower()
    if s in ("cusp", "inf", "infinity", "oo"):
        return Cusp()
    if s.startswith("angle:"):
        return ConeAngle(float(s[6:]))
    if s.startswith("boundary:"):
        return Boundary(float(s[9:]))
    try:
        k = int(s)
    except ValueError:
        raise DomainError(f"unrecognised corner spec {text!r}") from None
    return ConeOrder(k)


@dataclass(frozen=True)
class CornerWeights:
    w1: float
    w2: float
    w3: float

    def __post_init__(self):
        for name in ("w1", "w2", "w3"):
            object.__setattr__(self, name, float(getattr(self, name)))
        for w in self:
            if not math.isfinite(w) or w < 0.0:
                raise DomainError(f"corner weights must be finite and >= 0, got {tuple(self)}")

    def __iter__(self) -> Iterator[float]:
        return iter((self.w1, self.w2, self.w3))

    def __getitem__(self, i):
        return (self.w1, self.w2, self.w3)[i]

    def __len__(self):
        return 3

    @classmethod
    def from_corners(cls, corners) -> "CornerWeights":
        return cls(*(c.weight for c in corners))

    @classmethod
    def from_angles(cls, angles) -> "CornerWeights":
        return cls.from_corners(corner_from_angle(a) for a in angles)

    @property
    def triangular(self) -> bool:
        """True when every weight comes from a cone point or cusp."""
        return max(self) <= 1.0
