"""Shared surface fixtures.

Each case fixture is self-symmetric: the data is globally defined, satisfies
the planar-boundary and constant-angle hypotheses exactly, and reproduces
itself under its reflection formula, so every extension quantity has a
closed-form oracle (the original data itself).
"""

import cmath
import math

from maxsurf.expr import parse
from maxsurf.minkowski import LVector, Plane
from maxsurf.verify import catenoid_data
from maxsurf.weierstrass import Domain, DomainKind, WeierstrassData


def plane_fixture():
    """Flat surface X = (u/2, -v/2, 0)."""
    dom = Domain(DomainKind.DISK, radius=1.0)
    return WeierstrassData(parse("1"), parse("0"), dom, 0j, LVector(0, 0, 0))


def spacelike_fixture():
    """f = i e^{-iz}, g = e^{iz}/2; boundary in the plane x3 = 1/4, c = -5/3.

    Oracle antiderivatives: Phi1 = -e^{-iz}/2 + e^{iz}/8,
    Phi2 = -(i/2)(e^{-iz} + e^{iz}/4), Phi3 = iz/2.
    """
    dom = Domain(DomainKind.HALF_DISK, radius=0.9)
    data = WeierstrassData(
        parse("i*exp(-i*z)"), parse("exp(i*z)/2"), dom, 0.5j, LVector(0, 0, 0)
    )
    plane = Plane(LVector(0, 0, 1), -0.25)  # <x,(0,0,1)> = -x3 = -1/4
    return data, plane


def timelike_fixture():
    """f = e^{-iz}, g = -i + sqrt(2) i e^{iz}; x2 = 2 sinh(1/2) - sqrt(2)/2, lam = 1."""
    dom = Domain(DomainKind.HALF_DISK, radius=0.7)
    data = WeierstrassData(
        parse("exp(-i*z)"),
        parse("-i + sqrt(2)*i*exp(i*z)"),
        dom,
        0.5j,
        LVector(0, 0, 0),
    )
    d = 2 * math.sinh(0.5) - math.sqrt(2) / 2
    plane = Plane(LVector(0, 1, 0), d)
    return data, plane


def lightlike_fixture():
    """f = e^{-iz}, g = (1 + i e^{iz})/2; x1 - x3 = -1/8, c = -1, lam = -2."""
    dom = Domain(DomainKind.HALF_DISK, radius=0.7)
    data = WeierstrassData(
        parse("exp(-i*z)"), parse("(1 + i*exp(i*z))/2"), dom, 0.5j, LVector(0, 0, 0)
    )
    plane = Plane(LVector(1, 0, 1), -0.125)
    return data, plane


def lightlike_tangent_fixture():
    """f = i, g = 1 + i(1 + z/4); Re g = 1 on the axis, c = 1, lam = 0.

    Gauss values sit on the lower hyperboloid sheet (|g| > 1 throughout).
    """
    dom = Domain(DomainKind.HALF_DISK, radius=1.0)
    data = WeierstrassData(parse("i"), parse("1 + i*(1 + z/4)"), dom, 0.5j, LVector(0, 0, 0))
    d = -(2.0 / 3.0) * ((1 + 0.125j) ** 3).imag
    plane = Plane(LVector(1, 0, 1), d)
    return data, plane


def catenoid_extension_fixture(b: float = -0.7):
    """Catenoid with the spacelike plane x3 = b and its contact circle |z| = e^b."""
    data = catenoid_data(boundary_circle=math.exp(b))
    plane = Plane(LVector(0, 0, 1), -b)
    return data, plane


def catenoid_oracle(z: complex) -> tuple[float, float, float]:
    """Closed-form X for f = 1/z^2, g = z anchored at z0 = 1:
    antiderivatives (z - 1/z)/2, (i/2)(2 - z - 1/z), log z."""
    z = complex(z)
    p1 = 0.5 * (z - 1 / z)
    p2 = 0.5j * (2 - z - 1 / z)
    p3 = cmath.log(z)
    return (p1.real, p2.real, p3.real)


def random_polynomial_data(rng):
    """Random-coefficient polynomial (f, g) with |g| < 1 on the unit disk."""
    from maxsurf.expr import Add, Const, Mul, Pow, Var

    def poly(coeffs):
        e = Const(coeffs[0])
        for k, c in enumerate(coeffs[1:], 1):
            e = Add(e, Mul(Const(c), Pow(Var(), k)))
        return e

    def cvals(n, scale):
        return [complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale)) for _ in range(n)]

    f = poly(cvals(4, 1.0))
    g = poly(cvals(3, 0.2))  # |g| <= 0.6 < 1 on |z| <= 1
    dom = Domain(DomainKind.DISK, radius=1.0)
    return WeierstrassData(f, g, dom, 0j, LVector(0, 0, 0))
