"""Linear algebra of Lorentz-Minkowski 3-space with the (2,1) inner product."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "CausalClass",
    "LVector",
    "Plane",
    "causal_class",
    "causal_class_tol",
    "lnorm",
    "lorentz_cross",
    "lorentz_inner",
    "plane_class",
]


@dataclass(frozen=True)
class LVector:
    """Point or vector of L^3; the metric is x1*y1 + x2*y2 - x3*y3."""

    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        for name in ("x1", "x2", "x3"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"non-finite component {name}={v}")
            object.__setattr__(self, name, v)

    def __add__(self, other: "LVector") -> "LVector":
        return LVector(self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: "LVector") -> "LVector":
        return LVector(self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3)

    def __neg__(self) -> "LVector":
        return LVector(-self.x1, -self.x2, -self.x3)

    def __mul__(self, s: float) -> "LVector":
        return LVector(self.x1 * s, self.x2 * s, self.x3 * s)

    __rmul__ = __mul__

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x1, self.x2, self.x3)


class CausalClass(Enum):
    SPACELIKE = "spacelike"
    LIGHTLIKE = "lightlike"
    TIMELIKE = "timelike"


@dataclass(frozen=True)
class Plane:
    """Plane {x : <x, n> = d} with nonzero pseudo-normal n.

    Note the Lorentz inner product: the plane x3 = b has n = (0, 0, 1) and
    d = -b, since <x, (0,0,1)> = -x3.
    """

    n: LVector
    d: float

    def __post_init__(self):
        if self.n.x1 == 0 and self.n.x2 == 0 and self.n.x3 == 0:
            raise ValueError("plane normal must be nonzero")
        object.__setattr__(self, "d", float(self.d))


def lorentz_inner(x: LVector, y: LVector) -> float:
    return x.x1 * y.x1 + x.x2 * y.x2 - x.x3 * y.x3


def lorentz_cross(a: LVector, b: LVector) -> LVector:
    """Cross product adapted to the metric; <a^b, a> = <a^b, b> = 0."""
    return LVector(
        a.x2 * b.x3 - a.x3 * b.x2,
        a.x3 * b.x1 - a.x1 * b.x3,
        a.x2 * b.x1 - a.x1 * b.x2,
    )


def lnorm(x: LVector) -> float:
    return math.sqrt(abs(lorentz_inner(x, x)))


def causal_class(x: LVector) -> CausalClass:
    """Sign of <x, x>; the zero vector counts as spacelike."""
    if x.x1 == 0 and x.x2 == 0 and x.x3 == 0:
        return CausalClass.SPACELIKE
    q = lorentz_inner(x, x)
    if q > 0:
        return CausalClass.SPACELIKE
    if q < 0:
        return CausalClass.TIMELIKE
    return CausalClass.LIGHTLIKE


def causal_class_tol(x: LVector, eps: float) -> CausalClass:
    """Tolerant variant for computed vectors that are never exactly lightlike."""
    if abs(x.x1) <= eps and abs(x.x2) <= eps and abs(x.x3) <= eps:
        return CausalClass.SPACELIKE
    q = lorentz_inner(x, x)
    if abs(q) <= eps:
        return CausalClass.LIGHTLIKE
    return CausalClass.SPACELIKE if q > 0 else CausalClass.TIMELIKE


_PLANE_DUAL = {
    CausalClass.TIMELIKE: CausalClass.SPACELIKE,
    CausalClass.LIGHTLIKE: CausalClass.LIGHTLIKE,
    CausalClass.SPACELIKE: CausalClass.TIMELIKE,
}


def plane_class(p: Plane) -> CausalClass:
    """A plane is spacelike/lightlike/timelike as its normal is timelike/lightlike/spacelike."""
    return _PLANE_DUAL[causal_class(p.n)]
