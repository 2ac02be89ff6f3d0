"""Weierstrass data for maximal surfaces and its numerical evaluation.

A surface patch is encoded by a holomorphic f, a meromorphic g, a domain,
and an anchor value X0 at the basepoint z0:

    phi1 = f (1 + g^2) / 2
    phi2 = i f (1 - g^2) / 2
    phi3 = f g
    X(z) = X0 + Re Integral_{z0}^{z} (phi1, phi2, phi3) dw

The components phi_k satisfy phi1^2 + phi2^2 - phi3^2 = 0 identically and
|phi1|^2 + |phi2|^2 - |phi3|^2 = |f|^2 (1 - |g|^2)^2 / 2 > 0 away from
|g| = 1 (the degenerate, conelike locus).  Path integrals use adaptive
Gauss-Kronrod quadrature along polylines that detour around declared
punctures; the result is path independent as long as the data has no real
periods, which is the caller's responsibility to ensure (a loop diagnostic
lives in the verify module).  Data objects are immutable and evaluation is
pure, so surfaces may be sampled point-parallel without coordination.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .expr import Expr, compile_fn, evaluate
from .minkowski import LVector

__all__ = [
    "DegenerateMetricError",
    "Domain",
    "DomainKind",
    "PathError",
    "PhiTriple",
    "QuadratureConfig",
    "SurfaceError",
    "SurfaceValue",
    "ToleranceError",
    "WeierstrassData",
    "conformal_factor",
    "evaluate_surface",
    "gauss_from_g",
    "gauss_map",
    "loop_periods",
    "phi",
    "phi_exprs",
    "stereo_inverse",
    "surface_path",
]


class SurfaceError(Exception):
    pass


class PathError(SurfaceError):
    """Integration path cannot be constructed (endpoint on a puncture)."""


class ToleranceError(SurfaceError):
    """Quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved error estimate {achieved:.3e})")
        self.achieved = achieved


class DegenerateMetricError(SurfaceError):
    """|g| = 1 within tolerance; the induced metric degenerates."""


class DomainKind(str, Enum):
    DISK = "disk"
    HALF_DISK = "upper-half-disk"
    ANNULUS = "annulus"
    HALF_ANNULUS = "half-annulus"
    PUNCTURED_DISK = "punctured-disk"


_HALF_KINDS = (DomainKind.HALF_DISK, DomainKind.HALF_ANNULUS)
_RING_KINDS = (DomainKind.ANNULUS, DomainKind.HALF_ANNULUS)


@dataclass(frozen=True)
class Domain:
    """Planar parameter domains: disks, half disks, annuli, punctured disks.

    ``boundary_circle`` marks a circle |z| = rho inside the domain as the
    arc across which an extension is to be performed; when absent the arc
    is the real diameter (for the half kinds).
    """

    kind: DomainKind
    radius: float = 1.0
    inner_radius: float = 0.0
    punctures: tuple[complex, ...] = ()
    boundary_circle: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", DomainKind(self.kind))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "inner_radius", float(self.inner_radius))
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.kind in _RING_KINDS:
            if not 0 < self.inner_radius < self.radius:
                raise ValueError("annulus needs 0 < inner_radius < radius")
        elif self.inner_radius != 0:
            raise ValueError(f"inner_radius not meaningful for {self.kind.value}")
        punctures = tuple(complex(p) for p in self.punctures)
        if self.kind is DomainKind.PUNCTURED_DISK and 0 not in punctures:
            punctures = (0j,) + punctures
        object.__setattr__(self, "punctures", punctures)
        for p in punctures:
            if not self._in_region(p):
                raise ValueError(f"puncture {p} outside the domain")
        if self.boundary_circle is not None:
            bc = float(self.boundary_circle)
            object.__setattr__(self, "boundary_circle", bc)
            if self.kind in _HALF_KINDS:
                raise ValueError("boundary_circle only applies to full kinds")
            if not self.inner_radius < bc < self.radius:
                raise ValueError("boundary_circle must lie inside the domain")

    def _in_region(self, z: complex, tol: float = 0.0) -> bool:
        r = abs(z)
        if r >= self.radius + tol:
            return False
        if self.kind in _RING_KINDS and r <= self.inner_radius - tol:
            return False
        if self.kind in _HALF_KINDS and z.imag <= -tol:
            return False
        return True

    def contains(self, z: complex, closed: bool = False) -> bool:
        """Strict interior membership; ``closed`` admits the closure within 1e-12."""
        z = complex(z)
        tol = 1e-12 * max(self.radius, 1.0) if closed else 0.0
        if not self._in_region(z, tol):
            return False
        for p in self.punctures:
            if abs(z - p) <= 1e-12 * max(self.radius, 1.0):
                return False
        return True


@dataclass(frozen=True)
class PhiTriple:
    phi1: complex
    phi2: complex
    phi3: complex

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (self.phi1, self.phi2, self.phi3)


@dataclass(frozen=True)
class QuadratureConfig:
    """Controls for path integration.

    ``clearance`` is the closest approach allowed to a puncture before the
    straight path is replaced by a two-segment detour; ``path_policy`` may
    be "detour" (default) or "straight" (raise instead of detouring).
    """

    tol: float = 1e-10
    max_depth: int = 26
    clearance: float = 0.05
    path_policy: str = "detour"

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.path_policy not in ("detour", "straight"):
            raise ValueError("path_policy must be 'detour' or 'straight'")


@dataclass(frozen=True)
class WeierstrassData:
    """(f, g, domain, basepoint, base value): a complete surface patch.

    ``g_poles`` declares poles of g among the domain punctures as
    (location, order) pairs; at a pole of order m of g, f must carry a zero
    of order 2m for the patch to be regular, which the verify module checks
    numerically.
    """

    f: Expr
    g: Expr
    domain: Domain
    z0: complex
    X0: LVector
    g_poles: tuple[tuple[complex, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "z0", complex(self.z0))
        if not self.domain.contains(self.z0, closed=True):
            raise ValueError(f"basepoint {self.z0} outside the domain closure")
        poles = tuple((complex(p), int(m)) for p, m in self.g_poles)
        object.__setattr__(self, "g_poles", poles)
        for p, m in poles:
            if m < 1:
                raise ValueError("pole order must be >= 1")
            if not any(abs(p - q) <= 1e-9 for q in self.domain.punctures):
                raise ValueError(f"declared pole {p} is not a domain puncture")


# ---------------------------------------------------------------------------
# pointwise quantities

def phi(data: WeierstrassData, z: complex) -> PhiTriple:
    """The holomorphic triple at z; raises EvalError at punctures."""
    fv = evaluate(data.f, z)
    gv = evaluate(data.g, z)
    g2 = gv * gv
    return PhiTriple(0.5 * fv * (1 + g2), 0.5j * fv * (1 - g2), fv * gv)


def phi_exprs(f: Expr, g: Expr) -> tuple[Expr, Expr, Expr]:
    """Symbolic phi triple, for differentiation and reflection formulas."""
    from .expr import Add, Const, Mul, Pow, Sub

    g2 = Pow(g, 2)
    return (
        Mul(Const(0.5), Mul(f, Add(Const(1), g2))),
        Mul(Const(0.5j), Mul(f, Sub(Const(1), g2))),
        Mul(f, g),
    )


def _phi_fn(f: Expr, g: Expr) -> Callable[[complex], tuple[complex, complex, complex]]:
    ff = compile_fn(f)
    gg = compile_fn(g)

    def fn(z: complex) -> tuple[complex, complex, complex]:
        fv = ff(z)
        gv = gg(z)
        g2 = gv * gv
        return (0.5 * fv * (1 + g2), 0.5j * fv * (1 - g2), fv * gv)

    return fn


def gauss_from_g(w: complex, eps: float = 1e-12) -> LVector:
    """Unit timelike normal on the hyperboloid <N,N> = -1, from a Gauss value."""
    w = complex(w)
    ww = w.real * w.real + w.imag * w.imag
    den = 1.0 - ww
    if abs(den) < eps:
        raise DegenerateMetricError(f"|g| = 1 within {eps} at g = {w}")
    return LVector(2 * w.real / den, 2 * w.imag / den, (1 + ww) / den)


def gauss_map(data: WeierstrassData, z: complex, eps: float = 1e-12) -> LVector:
    """N = (2 Re g, 2 Im g, 1 + |g|^2) / (1 - |g|^2); lands on one hyperboloid sheet."""
    return gauss_from_g(evaluate(data.g, z), eps)


def stereo_inverse(N: LVector, tol: float = 1e-9) -> complex:
    """Stereographic projection from (0,0,-1); inverts gauss_from_g on the upper sheet."""
    q = N.x1 * N.x1 + N.x2 * N.x2 - N.x3 * N.x3
    if abs(q + 1) > tol:
        raise ValueError(f"not on the unit hyperboloid: <N,N> = {q}")
    if N.x3 < 0:
        raise ValueError("lower hyperboloid sheet is outside the projection chart")
    return complex(N.x1, N.x2) / (1 + N.x3)


def conformal_factor(data: WeierstrassData, z: complex) -> float:
    """|phi1|^2 + |phi2|^2 - |phi3|^2, the induced metric density; 0 iff |g| = 1."""
    p = phi(data, z)
    return (
        abs(p.phi1) ** 2 + abs(p.phi2) ** 2 - abs(p.phi3) ** 2
    )


# ---------------------------------------------------------------------------
# quadrature: 15-point Gauss-Kronrod with adaptive bisection

_XGK = (
    0.9914553711208126,
    0.9491079123427585,
    0.8648644233597691,
    0.7415311855993944,
    0.5860872354676911,
    0.4058451513773972,
    0.2077849550078985,
)
_WGK = (
    0.0229353220105292,
    0.0630920926299785,
    0.1047900103222502,
    0.1406532597155259,
    0.1690047266392679,
    0.1903505780647854,
    0.2044329400752989,
)
_WGK_CENTER = 0.2094821410847278
_WG = (0.1294849661688697, 0.2797053914892767, 0.3818300505051189)
_WG_CENTER = 0.4179591836734694


def _gk15(fn, a: complex, b: complex):
    """One Gauss-Kronrod panel of the complex line integral of a 3-tuple field."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    f0 = fn(c)
    k1 = _WGK_CENTER * f0[0]
    k2 = _WGK_CENTER * f0[1]
    k3 = _WGK_CENTER * f0[2]
    g1 = _WG_CENTER * f0[0]
    g2 = _WG_CENTER * f0[1]
    g3 = _WG_CENTER * f0[2]
    for j, x in enumerate(_XGK):
        dz = h * x
        fa = fn(c - dz)
        fb = fn(c + dz)
        w = _WGK[j]
        k1 += w * (fa[0] + fb[0])
        k2 += w * (fa[1] + fb[1])
        k3 += w * (fa[2] + fb[2])
        if j % 2 == 1:
            wg = _WG[j // 2]
            g1 += wg * (fa[0] + fb[0])
            g2 += wg * (fa[1] + fb[1])
            g3 += wg * (fa[2] + fb[2])
    scale = abs(h)
    err = scale * max(abs(k1 - g1), abs(k2 - g2), abs(k3 - g3))
    return (h * k1, h * k2, h * k3), err


def _integrate_segment(fn, a, b, tol, depth):
    """Adaptive bisection; returns (triple, error estimate, converged)."""
    (i1, i2, i3), err = _gk15(fn, a, b)
    mag = max(abs(i1), abs(i2), abs(i3))
    if err <= tol or err <= 1e-15 * mag or depth <= 0:
        return (i1, i2, i3), err, (err <= tol or err <= 1e-15 * mag)
    m = 0.5 * (a + b)
    left, el, okl = _integrate_segment(fn, a, m, 0.5 * tol, depth - 1)
    right, er, okr = _integrate_segment(fn, m, b, 0.5 * tol, depth - 1)
    total = (left[0] + right[0], left[1] + right[1], left[2] + right[2])
    return total, el + er, okl and okr


def _detour_point(s: complex, t: complex, p: complex, clearance: float) -> complex | None:
    d = t - s
    l2 = (d * d.conjugate()).real
    if l2 == 0:
        return None
    tt = ((p - s) * d.conjugate()).real / l2
    if tt <= 0 or tt >= 1:
        return None
    q = s + tt * d
    dist = abs(q - p)
    if dist >= clearance:
        return None
    if dist < 1e-15:
        n = 1j * d / abs(d)
        return p + n * clearance
    return p + (q - p) * (clearance / dist)


def _build_path(z0: complex, z1: complex, punctures, cfg: QuadratureConfig) -> list[complex]:
    a, b = complex(z0), complex(z1)
    for p in punctures:
        if abs(a - p) < 1e-12 or abs(b - p) < 1e-12:
            raise PathError(f"path endpoint coincides with puncture {p}")
    points = [a, b]
    for p in punctures:
        rebuilt = [points[0]]
        for s, t in zip(points, points[1:]):
            w = _detour_point(s, t, p, cfg.clearance)
            if w is not None:
                if cfg.path_policy == "straight":
                    raise PathError(
                        f"straight path from {a} to {b} passes within "
                        f"{cfg.clearance} of puncture {p}"
                    )
                rebuilt.append(w)
            rebuilt.append(t)
        points = rebuilt
    return points


@dataclass(frozen=True)
class SurfaceValue:
    value: LVector
    waypoints: tuple[complex, ...]
    error: float


def surface_path(data: WeierstrassData, z: complex, q: QuadratureConfig | None = None) -> SurfaceValue:
    """Evaluate X(z) and report the integration path and achieved error estimate."""
    q = q or QuadratureConfig()
    fn = _phi_fn(data.f, data.g)
    points = _build_path(data.z0, complex(z), data.domain.punctures, q)
    nseg = len(points) - 1
    tol_each = q.tol / max(nseg, 1)
    tot1 = tot2 = tot3 = 0j
    err = 0.0
    ok = True
    for a, b in zip(points, points[1:]):
        if a == b:
            continue
        (i1, i2, i3), e, good = _integrate_segment(fn, a, b, tol_each, q.max_depth)
        tot1 += i1
        tot2 += i2
        tot3 += i3
        err += e
        ok = ok and good
    if not ok:
        raise ToleranceError(f"quadrature did not converge on path to {z}", err)
    X = LVector(data.X0.x1 + tot1.real, data.X0.x2 + tot2.real, data.X0.x3 + tot3.real)
    return SurfaceValue(X, tuple(points), err)


def evaluate_surface(data: WeierstrassData, z: complex, q: QuadratureConfig | None = None) -> LVector:
    """X(z) = X0 + Re Integral of (phi1, phi2, phi3) from z0 to z."""
    return surface_path(data, z, q).value


def loop_periods(
    data: WeierstrassData,
    loop: "list[complex] | tuple[complex, ...]",
    q: QuadratureConfig | None = None,
) -> tuple[complex, complex, complex]:
    """Periods of the phi triple around a closed polyline.

    The surface is single valued only when the real parts vanish for every
    loop in the domain; declare the loops to test (the polyline is closed
    automatically).  The catenoid's loop around the puncture, for instance,
    has periods (0, 0, 2 pi i): purely imaginary, so X stays well defined.
    """
    q = q or QuadratureConfig()
    pts = [complex(w) for w in loop]
    if len(pts) < 3:
        raise ValueError("a loop needs at least 3 waypoints")
    if pts[0] != pts[-1]:
        pts.append(pts[0])
    fn = _phi_fn(data.f, data.g)
    tol_each = q.tol / (len(pts) - 1)
    tot1 = tot2 = tot3 = 0j
    for a, b in zip(pts, pts[1:]):
        detoured = _build_path(a, b, data.domain.punctures, q)
        for s, t in zip(detoured, detoured[1:]):
            (i1, i2, i3), _, _ = _integrate_segment(fn, s, t, tol_each, q.max_depth)
            tot1 += i1
            tot2 += i2
            tot3 += i3
    return (tot1, tot2, tot3)
