import cmath
import math

import numpy as np
import pytest

from fixtures import (
    catenoid_extension_fixture,
    lightlike_fixture,
    lightlike_tangent_fixture,
    spacelike_fixture,
    timelike_fixture,
)
from maxsurf.expr import evaluate, parse
from maxsurf.extension import (
    BoundaryArc,
    CircleOrLine,
    DegenerateContactWarning,
    GeometryMismatchError,
    HypothesisViolationError,
    OrthogonalContactError,
    SingularReconstructionError,
    _check_reconstruction_singular,
    _locus_mismatch,
    boundary_samples,
    extend,
    extend_lightlike,
    extend_spacelike,
    extend_timelike,
    fit_circle_or_line,
    measure_contact,
    reflect_circular_g,
    reflect_lightlike_g,
    reflect_spacelike_g,
    reflect_timelike_g,
)
from maxsurf.minkowski import CausalClass, LVector, Plane
from maxsurf.weierstrass import Domain, DomainKind, WeierstrassData


def minus_points(n=50, radius=0.6, seed=0):
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < n:
        z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, -0.01))
        if abs(z) < radius:
            pts.append(z)
    return pts


# ---------------------------------------------------------------------------
# locus fitting

def test_fit_exact_circle():
    pts = [1j + 2 * cmath.exp(1j * t) for t in np.linspace(0, 2, 9)]
    locus = fit_circle_or_line(pts)
    assert locus.kind == "circle"
    assert abs(locus.center - 1j) < 1e-10
    assert abs(locus.radius - 2) < 1e-10
    assert locus.residual < 1e-10


def test_fit_collinear_points_gives_line():
    pts = [complex(1.0, t) for t in np.linspace(-1, 1, 9)]
    locus = fit_circle_or_line(pts)
    assert locus.kind == "line"
    assert abs(locus.direction.real) < 1e-12
    assert abs(locus.point.real - 1.0) < 1e-12
    assert locus.distance(1 + 5j) < 1e-12
    assert abs(locus.distance(3 + 0j) - 2) < 1e-12


def test_locus_mismatch_metric():
    a = CircleOrLine("circle", center=0j, radius=1.0)
    b = CircleOrLine("circle", center=0.1 + 0j, radius=1.05)
    assert abs(_locus_mismatch(a, b) - 0.1) < 1e-12
    line = CircleOrLine("line", point=1 + 0j, direction=1j)
    assert _locus_mismatch(a, line) == math.inf


# ---------------------------------------------------------------------------
# contact measurement

def test_measure_contact_spacelike_fixture():
    data, plane = spacelike_fixture()
    c = measure_contact(data, plane)
    assert c.plane_kind is CausalClass.SPACELIKE
    assert abs(c.c + 5 / 3) < 1e-8
    assert c.deviation < 1e-8
    assert c.sheet == 1
    assert c.locus.kind == "circle"
    assert abs(c.locus.center) < 1e-9
    assert abs(c.locus.radius - 0.5) < 1e-9
    # cosh(theta) = 5/3 forces tanh(theta/2) = 1/2 on the upper sheet
    assert abs(math.cosh(c.theta) - 5 / 3) < 1e-8
    assert abs(math.tanh(c.theta / 2) - 0.5) < 1e-8
    assert c.locus_mismatch < 1e-6


def test_measure_contact_timelike_fixture():
    data, plane = timelike_fixture()
    c = measure_contact(data, plane)
    assert c.plane_kind is CausalClass.TIMELIKE
    assert abs(c.c - 1.0) < 1e-6
    assert abs(c.lam - 1.0) < 1e-6
    assert abs(c.locus.center + 1j) < 1e-6
    assert abs(c.locus.radius - math.sqrt(2)) < 1e-6


def test_measure_contact_lightlike_fixture():
    data, plane = lightlike_fixture()
    c = measure_contact(data, plane)
    assert c.plane_kind is CausalClass.LIGHTLIKE
    assert abs(c.c + 1.0) < 1e-7
    assert abs(c.lam + 2.0) < 1e-7
    assert abs(c.locus.center - 0.5) < 1e-7
    assert abs(c.locus.radius - 0.5) < 1e-7


def test_measure_contact_lightlike_tangent_fixture():
    data, plane = lightlike_tangent_fixture()
    c = measure_contact(data, plane)
    assert c.lam == 0.0
    assert c.sheet == -1
    assert c.locus.kind == "line"
    assert abs(c.locus.point.real - 1.0) < 1e-7
    assert abs(c.locus.direction.real) < 1e-7


def test_measure_contact_catenoid_circle():
    data, plane = catenoid_extension_fixture(b=-0.7)
    rho = math.exp(-0.7)
    c = measure_contact(data, plane)
    assert c.boundary == BoundaryArc("circle", rho)
    assert abs(c.c + (1 + rho**2) / (1 - rho**2)) < 1e-9
    assert c.deviation < 1e-8
    assert abs(c.locus.radius - rho) < 1e-12
    assert abs(c.locus.center) < 1e-12
    assert abs(math.tanh(c.theta / 2) - rho) < 1e-9


def test_orthogonal_contact_rejected():
    # g real on the axis makes <N, (0,1,0)> -> 0
    dom = Domain(DomainKind.HALF_DISK, radius=0.7)
    data = WeierstrassData(parse("1"), parse("0.3*cos(z)"), dom, 0.5j, LVector(0, 0, 0))
    with pytest.raises(OrthogonalContactError) as exc:
        measure_contact(data, Plane(LVector(0, 1, 0), 0.0))
    assert "symmetric" in str(exc.value)


def test_varying_angle_rejected():
    dom = Domain(DomainKind.HALF_DISK, radius=0.9)
    data = WeierstrassData(parse("1"), parse("0.3+0.2*z"), dom, 0.5j, LVector(0, 0, 0))
    with pytest.raises(HypothesisViolationError):
        measure_contact(data, Plane(LVector(0, 0, 1), 0.0))


def test_misaligned_normal_rejected():
    data, _ = spacelike_fixture()
    with pytest.raises(GeometryMismatchError):
        measure_contact(data, Plane(LVector(0.1, 0, 1), 0.0))
    with pytest.raises(GeometryMismatchError):
        measure_contact(data, Plane(LVector(1, 0, -1), 0.0))  # wrong lightlike axis


def test_flipped_normal_orientation_is_canonicalized():
    data, plane = spacelike_fixture()
    flipped = Plane(LVector(0, 0, -2), -2 * plane.d)
    c1 = measure_contact(data, plane)
    c2 = measure_contact(data, flipped)
    assert abs(c1.c - c2.c) < 1e-10
    assert abs(c1.offset - c2.offset) < 1e-15


def test_degenerate_lightlike_contact_warns():
    # |g|^2 - 1 stays in (0.02, 0.05) along the arc: tangential contact
    # approaching the degenerate locus, still extrapolatable
    dom = Domain(DomainKind.HALF_DISK, radius=0.7)
    data = WeierstrassData(
        parse("i"), parse("1 + i*(0.18 + 0.05*z)"), dom, 0.5j, LVector(0, 0, 0)
    )
    with pytest.warns(DegenerateContactWarning):
        measure_contact(data, Plane(LVector(1, 0, 1), 0.0))


# ---------------------------------------------------------------------------
# the reflection formulas fix their locus and are involutive

def test_spacelike_reflection_fixes_circle_and_involutes():
    g = parse("exp(i*z)/2")
    gm = reflect_spacelike_g(g, 0.5)
    for u in np.linspace(-0.6, 0.6, 7):
        assert abs(abs(evaluate(gm, u)) - 0.5) < 1e-12
    g2 = reflect_spacelike_g(gm, 0.5)
    for z in minus_points(20):
        assert abs(evaluate(g2, z) - evaluate(g, z)) < 1e-12


def test_timelike_reflection_fixes_circle():
    g = parse("-i + sqrt(2)*i*exp(i*z)")
    gm = reflect_timelike_g(g, 1.0)
    for u in np.linspace(-0.5, 0.5, 7):
        w = evaluate(gm, u)
        assert abs(w.real**2 + (w.imag + 1) ** 2 - 2) < 1e-12


def test_lightlike_line_reflection_fixes_axis():
    g = parse("1 + i*(1 + z/4)")
    gm = reflect_lightlike_g(g, 0.0)
    for u in np.linspace(-0.5, 0.5, 7):
        assert abs(evaluate(gm, u).real - 1.0) < 1e-14


# ---------------------------------------------------------------------------
# full extensions on the self-symmetric fixtures

def check_self_symmetric(data, ext, tol=1e-7):
    for z in minus_points(60, radius=0.5 * data.domain.radius):
        assert abs(evaluate(ext.g_minus, z) - evaluate(data.g, z)) < tol
        assert abs(evaluate(ext.f_minus, z) - evaluate(data.f, z)) < tol


def test_extend_spacelike_fixture():
    data, plane = spacelike_fixture()
    ext = extend_spacelike(data, measure_contact(data, plane))
    assert ext.reflected == "x3"
    assert ext.matching.passed
    assert ext.matching.max_gap < 1e-10
    check_self_symmetric(data, ext, tol=1e-8)
    # odd reflection of x3 about the plane level 1/4
    for z in (0.3 + 0.2j, -0.1 + 0.4j):
        a = ext.evaluate(z).x3 - 0.25
        b = ext.evaluate(z.conjugate()).x3 - 0.25
        assert abs(a + b) < 1e-8


def test_extend_spacelike_restricts_to_original():
    data, plane = spacelike_fixture()
    ext = extend_spacelike(data, measure_contact(data, plane))
    from maxsurf.weierstrass import evaluate_surface

    for z in (0.2 + 0.3j, -0.4 + 0.1j):
        X = evaluate_surface(data, z)
        Xe = ext.evaluate(z)
        assert max(abs(a - b) for a, b in zip(X.as_tuple(), Xe.as_tuple())) < 1e-10


def test_extend_timelike_fixture():
    data, plane = timelike_fixture()
    contact = measure_contact(data, plane)
    ext = extend_timelike(data, contact)
    assert ext.reflected == "x2"
    assert ext.matching.passed
    assert ext.matching.max_gap < 1e-10
    check_self_symmetric(data, ext, tol=1e-10)
    d = plane.d
    for z in (0.2 + 0.2j, -0.3 + 0.15j):
        a = ext.evaluate(z).x2 - d
        b = ext.evaluate(z.conjugate()).x2 - d
        assert abs(a + b) < 1e-8


def test_extend_lightlike_fixture():
    data, plane = lightlike_fixture()
    ext = extend_lightlike(data, measure_contact(data, plane))
    assert ext.reflected == "psi"
    assert ext.matching.passed
    check_self_symmetric(data, ext, tol=1e-7)
    for z in (0.2 + 0.2j, -0.3 + 0.15j):
        Xp = ext.evaluate(z)
        Xm = ext.evaluate(z.conjugate())
        a = (Xp.x1 - Xp.x3) + 0.125
        b = (Xm.x1 - Xm.x3) + 0.125
        assert abs(a + b) < 1e-7


def test_extend_lightlike_tangent_fixture():
    data, plane = lightlike_tangent_fixture()
    ext = extend_lightlike(data, measure_contact(data, plane))
    assert ext.matching.max_gap < 1e-8
    check_self_symmetric(data, ext, tol=1e-8)


def test_half_plane_identity_for_lightlike_reconstruction():
    # phi1 - phi3 = f (1 - g)^2 / 2 is an algebraic identity of the triple
    from maxsurf.weierstrass import phi
    from fixtures import random_polynomial_data

    rng = np.random.default_rng(9)
    data = random_polynomial_data(rng)
    for _ in range(200):
        z = complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7))
        p = phi(data, z)
        fv = evaluate(data.f, z)
        gv = evaluate(data.g, z)
        lhs = 0.5 * fv * (1 - gv) ** 2
        rhs = p.phi1 - p.phi3
        assert abs(lhs - rhs) <= 1e-12 * (1 + abs(rhs))


def test_extension_dispatch():
    data, plane = catenoid_extension_fixture()
    ext = extend(data, plane)
    assert ext.contact.boundary.kind == "circle"
    data2, plane2 = timelike_fixture()
    assert extend(data2, plane2).reflected == "x2"
    data3, plane3 = lightlike_fixture()
    assert extend(data3, plane3).reflected == "psi"


def test_singular_reconstruction_guard():
    with pytest.raises(SingularReconstructionError):
        _check_reconstruction_singular(parse("1"), [0.1 + 0.1j], (1 + 0j,))


# ---------------------------------------------------------------------------
# circular (conelike) extension

def test_extend_circular_reproduces_catenoid():
    data, plane = catenoid_extension_fixture(b=-0.7)
    ext = extend(data, plane)
    rho = math.exp(-0.7)
    rng = np.random.default_rng(4)
    for _ in range(40):
        z = cmath.rect(rng.uniform(0.26, 0.45), rng.uniform(-math.pi, math.pi))
        assert abs(evaluate(ext.g_minus, z) - z) < 1e-12
        assert abs(evaluate(ext.f_minus, z) - 1 / z**2) < 1e-11


def test_extend_circular_fixes_the_circle():
    data, plane = catenoid_extension_fixture(b=-0.7)
    ext = extend(data, plane)
    rho = math.exp(-0.7)
    for t in np.linspace(-math.pi, math.pi, 9, endpoint=False):
        z = rho * cmath.exp(1j * t)
        assert abs(evaluate(ext.g_minus, z) - evaluate(data.g, z)) < 1e-10


def test_extend_circular_involution():
    data, plane = catenoid_extension_fixture(b=-0.7)
    ext = extend(data, plane)
    rho = math.exp(-0.7)
    g2 = reflect_circular_g(ext.g_minus, ext.contact.locus.radius, rho)
    rng = np.random.default_rng(5)
    for _ in range(30):
        z = cmath.rect(rng.uniform(0.55, 0.95), rng.uniform(-math.pi, math.pi))
        assert abs(evaluate(g2, z) - evaluate(data.g, z)) < 1e-10


def test_extend_circular_slab_mapping():
    b, a = -0.7, -1.2
    data, plane = catenoid_extension_fixture(b=b)
    ext = extend(data, plane)
    worst_slice = worst_pair = 0.0
    for k in range(10):
        zk = math.exp(a) * cmath.exp(1j * (2 * math.pi * k / 10 + 0.05))
        Xm = ext.evaluate(zk)
        Xp = ext.evaluate(ext.reflect(zk))
        worst_slice = max(worst_slice, abs(Xm.x3 - a), abs(Xp.x3 - (2 * b - a)))
        worst_pair = max(worst_pair, abs(Xm.x3 + Xp.x3 - 2 * b))
    assert worst_slice < 1e-7
    assert worst_pair < 1e-7


def test_extend_circular_plane_containment():
    data, plane = catenoid_extension_fixture(b=-0.7)
    ext = extend(data, plane)
    rho = math.exp(-0.7)
    for t in np.linspace(-math.pi, math.pi, 7, endpoint=False):
        X = ext.evaluate(rho * cmath.exp(1j * t))
        assert abs(X.x3 - (-0.7)) < 1e-9


def test_extend_circular_matching():
    data, plane = catenoid_extension_fixture(b=-0.7)
    ext = extend(data, plane)
    assert ext.matching.passed
    assert ext.matching.max_gap < 1e-12


def test_extend_across_half_annulus_diameter():
    # same data as the spacelike fixture on a two-segment boundary arc
    dom = Domain(DomainKind.HALF_ANNULUS, radius=0.9, inner_radius=0.2)
    data = WeierstrassData(
        parse("i*exp(-i*z)"), parse("exp(i*z)/2"), dom, 0.5j, LVector(0, 0, 0)
    )
    ext = extend(data, Plane(LVector(0, 0, 1), -0.25))
    assert abs(ext.contact.c + 5 / 3) < 1e-9
    assert ext.matching.max_gap < 1e-10
    z = complex(0.4, -0.3)
    assert abs(evaluate(ext.g_minus, z) - evaluate(data.g, z)) < 1e-12


# ---------------------------------------------------------------------------
# boundary sampling helper

def test_boundary_samples_stay_in_domain():
    data, _ = timelike_fixture()
    for z in boundary_samples(data.domain):
        assert data.domain.contains(z)
    data2, _ = catenoid_extension_fixture()
    for z in boundary_samples(data2.domain):
        assert data2.domain.contains(z)
