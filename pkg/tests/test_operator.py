import math

import mpmath
import numpy as np
import pytest
from scipy import integrate

from cimrl import special
from cimrl.errors import DomainError
from cimrl.geometry import make_arc_strip, make_circle, make_polygon, make_rect
from cimrl.medium import MU0, Material, MediumSpec, SolverOptions, wavenumber_conductor
from cimrl.operator import (
    assemble_P,
    assemble_U,
    assemble_pair,
    block_diag_admittance,
    field_coefficients,
    green_kernel,
    green_kernel_dn,
    p_diagonal,
    p_diagonal_small_argument,
    solve_pair,
    surface_admittance,
    OperatorPair,
)
from cimrl.reference import RoundWireSpec, round_wire_internal_impedance

COPPER = Material(5.8e7)
OPTS = SolverOptions()


def test_green_kernel_examples():
    assert green_kernel(1.0, 1.0, 1.0) == pytest.approx(0.7651976866 - 0.0882569642j, abs=1e-10)
    g = green_kernel(1.0, 1e-4, 1e6)
    expected = 1e6 + 1j * (2 / math.pi) * (math.log(2) - math.log(1e-4) - special.EULER_GAMMA)
    # the expansion drops O(z**2) terms: 1e6 * (kd)**2 / 4 = 2.5e-3 in the real part
    assert g.real == pytest.approx(expected.real, rel=1e-8)
    assert g.imag == pytest.approx(expected.imag, abs=1e-7)
    assert g.imag == pytest.approx(5.937, abs=1e-3)
    with pytest.raises(DomainError):
        green_kernel(1.0, 0.0)


def test_green_kernel_dn_examples():
    assert green_kernel_dn(1.0, (0.0, 1.0), (1.0, 0.0)) == 0
    assert green_kernel_dn(1.0, (1.0, 0.0), (1.0, 0.0)) == pytest.approx(
        -0.4400505857 - 0.7812128213j, abs=1e-10)
    with pytest.raises(DomainError):
        green_kernel_dn(1.0, (0.0, 0.0), (1.0, 0.0))


@pytest.mark.parametrize("k,c0", [(1.0, 1.0), (300 - 250j, 1.0), (0.5 - 0.5j, 1e6)])
def test_green_kernel_dn_finite_difference(k, c0):
    r_m = np.array([0.0, 0.0])
    src = np.array([3e-3, 1e-3])
    n = np.array([0.6, 0.8])
    step = 1e-7

    def g(p):
        return green_kernel(k, float(np.linalg.norm(p - r_m)), c0)

    fd = (g(src + step * n) - g(src - step * n)) / (2 * step)
    assert green_kernel_dn(k, src - r_m, n, c0) == pytest.approx(fd, rel=1e-6)


def test_p_diagonal_formula_example():
    val = p_diagonal_small_argument(0.1, 1.0, 1.0, 2.0)
    assert val.real == pytest.approx(0.1, rel=1e-12)
    assert val.imag == pytest.approx(0.2617, abs=1e-4)


@pytest.mark.parametrize("w,k,c0", [(0.1, 1.0, 1.0), (1e-4, 5e3 - 5e3j, 1.0),
                                    (1e-4, 50 - 50j, 1e6), (1e-4, 2e6 - 2e6j, 1.0)])
def test_p_diagonal_against_log_integral_oracle(w, k, c0):
    h = w / 2
    with mpmath.workdps(30):
        kk = mpmath.mpc(k.real, k.imag) if isinstance(k, complex) else mpmath.mpf(k)

        def f(x):
            z = kk * x
            return c0 * mpmath.besselj(0, z) - 1j * mpmath.bessely(0, z)

        ref = complex(2 * mpmath.quad(f, [0, h / 1e6, h / 1e3, h]))
    val = p_diagonal(np.array([w]), k, c0, 2.0)[0] / 2.0 * 2.0
    assert val == pytest.approx(ref, rel=1e-8)
    if abs(k) * w < 1e-3:
        assert p_diagonal_small_argument(w, k, c0, 2.0) == pytest.approx(val, rel=1e-6)


def _segment_integral(fn, a, b, singular_at=None):
    length = float(np.linalg.norm(b - a))
    pts = None if singular_at is None else [singular_at]

    def part(g):
        return integrate.quad(lambda t: g(fn(a + t * (b - a))), 0, 1, points=pts, limit=400,
                              epsabs=1e-15, epsrel=1e-13)[0] * length

    return part(np.real) + 1j * part(np.imag)


def test_unit_square_matches_adaptive_quadrature():
    c = make_polygon([(0, 0), (1, 0), (1, 1), (0, 1)], target_width=0.5)
    k, c0, omega, mu = 1.0, 1.0, 1.0, 2.0
    u = assemble_U(c, k, c0)
    p = assemble_P(c, k, mu, omega, c0)
    for m in range(8):
        rm = c.midpoints[m]
        for n in range(8):
            a, b, nn = c.starts[n], c.ends[n], c.normals[n]
            if m == n:
                assert u[m, n] == 1.0
                # integrable log singularity at the midpoint
                ref_p = 0.5 * omega * mu * _segment_integral(
                    lambda r: green_kernel(k, float(np.linalg.norm(r - rm)), c0), a, b, 0.5)
                assert p[m, n] == pytest.approx(ref_p, rel=1e-8)
                continue

            def dn(r):
                return green_kernel_dn(k, r - rm, nn, c0)

            ref_u = -0.5j / k * _segment_integral(dn, a, b) * k
            ref_u = 0.5j * k * _segment_integral(
                lambda r: (np.dot(r - rm, nn) / np.linalg.norm(r - rm))
                * complex(special.mixed_kernel1(k * np.linalg.norm(r - rm), c0)), a, b)
            ref_p = 0.5 * omega * mu * _segment_integral(
                lambda r: green_kernel(k, float(np.linalg.norm(r - rm)), c0), a, b)
            assert abs(u[m, n] - ref_u) <= 1e-9
            assert p[m, n] == pytest.approx(ref_p, rel=1e-8)


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def test_collinear_entries_vanish():
    c = make_rect((0, 0), 2.0, 1.0, target_width=0.25)
    u = assemble_U(c, 3.0 - 2.0j)
    for m in range(len(c)):
        for n in range(len(c)):
            if m != n and abs(_cross(c.tangents[m], c.tangents[n])) < 1e-14 and abs(
                    np.dot(c.midpoints[m] - c.midpoints[n], c.normals[n])) < 1e-14:
                assert u[m, n] == 0


def test_off_diagonal_midpoint_rule():
    c = make_circle((0, 0), 1.0, 64)
    k, mu, omega = 2.0 - 1.0j, MU0, 1e3
    p = assemble_P(c, k, mu, omega)
    m, n = 0, 32
    d = np.linalg.norm(c.midpoints[m] - c.midpoints[n])
    approx = 0.5 * omega * mu * c.widths[n] * green_kernel(k, d)
    assert p[m, n] == pytest.approx(approx, rel=1e-3)


def test_quadrature_order_convergence():
    c = make_rect((0, 0), 2e-3, 0.2e-3, n_segments=106)
    for f in (1e3, 1e7, 1e10):
        k = wavenumber_conductor(COPPER, 2 * math.pi * f)
        c0 = 1e6 if f < 1e4 else 1.0
        p5 = assemble_P(c, k, MU0, 2 * math.pi * f, c0, quad_points=5)
        p10 = assemble_P(c, k, MU0, 2 * math.pi * f, c0, quad_points=10)
        u5 = assemble_U(c, k, c0, quad_points=5)
        u10 = assemble_U(c, k, c0, quad_points=10)
        assert np.max(np.abs(p5 - p10)) <= 1e-6 * np.max(np.abs(p10))
        assert np.max(np.abs(u5 - u10)) <= 1e-6 * np.max(np.abs(u10))


@pytest.mark.parametrize("contour", [
    make_circle((0, 0), 1e-3, 32),
    make_rect((0, 0), 2e-3, 0.2e-3, n_segments=60, rotation=0.3),
    make_polygon([(0, 0), (6e-6, 0), (5e-6, 3e-6), (1e-6, 3e-6)], n_segments=40),
    make_arc_strip((0, 0), 5e-3, 35e-6, 0.2, 0.4, 20, 1),
])
@pytest.mark.parametrize("f", [1e2, 1e6, 1e9])
def test_transparent_conductor_nullity(contour, f):
    med = MediumSpec(2.2, 1.0)
    res = surface_admittance(contour, med.as_material(), med, 2 * math.pi * f, OPTS)
    w = 2 * math.pi * f
    k = wavenumber_conductor(med.as_material(), w)
    pair = assemble_pair(contour, k, med.as_material().mu, w, res.c0[0], OPTS)
    inner, _ = solve_pair(pair)
    assert np.linalg.norm(res.y) <= 1e-8 * np.linalg.norm(inner)


def _uniform_field_impedance(n, f, radius=1e-3):
    c = make_circle((0, 0), radius, n)
    y = surface_admittance(c, COPPER, MediumSpec(), 2 * math.pi * f, OPTS).y
    current = np.sum(c.widths * (y @ np.ones(n)))
    return 1.0 / current


def test_round_wire_dc():
    z = _uniform_field_impedance(64, 60.0)
    assert z.real == pytest.approx(1 / (5.8e7 * math.pi * 1e-6), rel=5e-3)


def test_round_wire_10mhz():
    # a/delta ~ 48 with ~2.2 skin depths per chord; one pulse per chord lands near -1.1% in Re
    z = _uniform_field_impedance(64, 1e7)
    ref = round_wire_internal_impedance(RoundWireSpec(1e-3, 5.8e7), 2 * math.pi * 1e7)
    assert z.real == pytest.approx(ref.real, rel=1e-2)
    assert z.imag == pytest.approx(ref.imag, rel=1e-2)


def test_field_coefficients_match_admittance():
    c = make_circle((0, 0), 1e-3, 24)
    w = 2 * math.pi * 1e5
    e = np.linspace(1.0, 2.0, 24) + 0.3j
    fc = field_coefficients(c, COPPER, MediumSpec(), w, e, OPTS)
    y = surface_admittance(c, COPPER, MediumSpec(), w, OPTS).y
    np.testing.assert_allclose(fc.j, y @ e, rtol=1e-10)
    np.testing.assert_allclose(fc.j, fc.h - fc.h_tilde)


def test_block_diag():
    a = surface_admittance(make_circle((0, 0), 1e-3, 2 + 1, "a"), COPPER, MediumSpec(), 1e3, OPTS)
    b = surface_admittance(make_circle((1, 0), 1e-3, 4, "b"), COPPER, MediumSpec(), 1e3, OPTS)
    ys = block_diag_admittance([a, b])
    assert ys.contour_sizes == (3, 4)
    assert ys.y.shape == (7, 7)
    assert np.all(ys.y[:3, 3:] == 0) and np.all(ys.y[3:, :3] == 0)
    assert np.linalg.norm(ys.y) ** 2 == pytest.approx(
        np.linalg.norm(a.y) ** 2 + np.linalg.norm(b.y) ** 2, rel=1e-12)
    single = block_diag_admittance([a])
    np.testing.assert_array_equal(single.y, a.y)
    with pytest.raises(ValueError):
        block_diag_admittance([])


def test_nonpositive_frequency_rejected():
    c = make_circle((0, 0), 1e-3, 8)
    with pytest.raises(DomainError):
        surface_admittance(c, COPPER, MediumSpec(), 0.0, OPTS)
    with pytest.raises(DomainError):
        assemble_P(c, 1.0, MU0, -1.0)
