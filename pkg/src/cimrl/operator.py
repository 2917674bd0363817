"""Contour-integral matrices U, P and the surface admittance operator.

For one contour, point matching of the contour integral at the segment
midpoints gives ``U @ e = P @ h`` with

    U[m, n] = (jk/2) * int_n (d.n'/d) * (c0*J1(kd) - j*Y1(kd)) dr'   (m != n)
    U[m, m] = 1
    P[m, n] = (omega*mu/2) * int_n (c0*J0(kd) - j*Y0(kd)) dr'

where ``d = r' - r_m`` and ``n'`` is the outward normal of the source
segment.  The surface admittance is ``Y = P^-1 U - P_out^-1 U_out``, the
second pair being built with the surrounding medium's parameters.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import math

import numpy as np
from scipy import linalg

from . import special
from .errors import DomainError, SingularMatrix
from .geometry import min_transversal_dimension
from .medium import (
    select_c0_material,
    select_c0_wavenumber,
    wavenumber_conductor,
    wavenumber_medium,
)
from .quadrature import build_plan, graded_rule, integrate

TWO_OVER_PI = 2.0 / math.pi


@dataclass(frozen=True)
class OperatorPair:
    u: np.ndarray
    p: np.ndarray


@dataclass(frozen=True)
class AdmittanceMatrix:
    y: np.ndarray
    contour_sizes: tuple
    c0: tuple = ()
    condition: tuple = ()


@dataclass(frozen=True)
class FieldCoefficients:
    e: np.ndarray
    h: np.ndarray
    h_tilde: np.ndarray
    j: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "j", self.h - self.h_tilde)


def green_kernel(k, d, c0=1.0):
    """c0*J0(kd) - j*Y0(kd)."""
    if d == 0:
        raise DomainError("Green kernel is singular at zero distance")
    return complex(special.mixed_kernel0(k * d, c0))


def green_kernel_dn(k, d_vec, n_prime, c0=1.0):
    """Normal derivative of the Green kernel at the source point."""
    d_vec = np.asarray(d_vec, dtype=float)
    d = math.hypot(d_vec[0], d_vec[1])
    if d == 0:
        raise DomainError("Green kernel derivative is singular at zero distance")
    cos = float(np.dot(d_vec, n_prime)) / d
    if cos == 0.0:
        return 0j
    return complex(-k * cos * special.mixed_kernel1(k * d, c0))


@lru_cache(maxsize=64)
def contour_plan(contour, quad_points=5, max_levels=6):
    """Quadrature plan of a contour against its own midpoints (cached per contour)."""
    return build_plan(contour.midpoints, contour.starts, contour.ends, q=quad_points,
                      max_levels=max_levels, self_pairs=True)


def assemble_U(c, k, c0=1.0, quad_points=5, max_levels=6):
    plan = contour_plan(c, quad_points, max_levels)
    normals = c.normals

    def kernel(d_vec, cols):
        d = np.hypot(d_vec[..., 0], d_vec[..., 1])
        dn = d_vec[..., 0] * normals[cols, 0] + d_vec[..., 1] * normals[cols, 1]
        return (dn / d) * special.mixed_kernel1(k * d, c0)

    u = (0.5j * k) * integrate(plan, c.midpoints, kernel)
    np.fill_diagonal(u, 1.0)
    return u


def p_diagonal_small_argument(width, k, c0, omega_mu):
    """Self term of P from J0 ~ 1 and Y0(z) ~ (2/pi)(ln(z/2) + gamma)."""
    w = width
    return 0.5 * omega_mu * (c0 * w - 1j * TWO_OVER_PI * w
                             * (np.log(k * w / 4.0) + special.EULER_GAMMA - 1.0))


def p_diagonal(widths, k, c0, omega_mu):
    """Self term of P integrated across the segment.

    The logarithm of the Neumann function is subtracted and integrated in
    closed form; the bounded remainder goes to a graded Gauss rule, so the
    result stays accurate when the segment spans many skin depths.
    """
    h = 0.5 * np.asarray(widths, dtype=float)
    t, wt = graded_rule()
    x = h[:, None] * t[None, :]
    remainder = special.mixed_kernel0(k * x, c0) + 1j * TWO_OVER_PI * np.log(x)
    regular = np.sum(remainder * wt[None, :], axis=1) * h
    singular = -1j * TWO_OVER_PI * h * (np.log(h) - 1.0)
    return omega_mu * (regular + singular)


def assemble_P(c, k, mu, omega, c0=1.0, quad_points=5, max_levels=6):
    if not omega > 0:
        raise DomainError("omega must be positive")
    if np.any(c.widths <= 0):
        raise DomainError("zero-width segment")
    plan = contour_plan(c, quad_points, max_levels)

    def kernel(d_vec, cols):
        d = np.hypot(d_vec[..., 0], d_vec[..., 1])
        return special.mixed_kernel0(k * d, c0)

    omega_mu = omega * mu
    p = (0.5 * omega_mu) * integrate(plan, c.midpoints, kernel)
    p[np.diag_indices_from(p)] = p_diagonal(c.widths, k, c0, omega_mu)
    return p


def assemble_pair(c, k, mu, omega, c0, opts):
    return OperatorPair(
        assemble_U(c, k, c0, opts.quad_points, opts.max_levels),
        assemble_P(c, k, mu, omega, c0, opts.quad_points, opts.max_levels),
    )


def _condition_1norm(a, lu_piv):
    lu, _ = lu_piv
    gecon, = linalg.get_lapack_funcs(("gecon",), (lu,))
    anorm = np.linalg.norm(a, 1)
    rcond, info = gecon(lu, anorm, norm="1")
    return math.inf if rcond == 0 else 1.0 / rcond


def solve_pair(pair, label="P"):
    """Return (P^-1 U, condition estimate of P) via a pivoted LU factorization."""
    with np.errstate(all="ignore"):
        try:
            lu_piv = linalg.lu_factor(pair.p, check_finite=True)
        except (ValueError, np.linalg.LinAlgError) as exc:
            raise SingularMatrix(f"factorization of {label} failed: {exc}") from exc
    cond = _condition_1norm(pair.p, lu_piv)
    if not np.all(np.abs(np.diag(lu_piv[0])) > 0) or not np.isfinite(cond):
        raise SingularMatrix(f"{label} is singular", cond)
    return linalg.lu_solve(lu_piv, pair.u), cond


def _c0_pair(mat, k, k_out, omega, min_dim, opts):
    # the lossless equivalent configuration has no skin depth; judge it by |k_out|
    return (select_c0_material(mat, k, omega, min_dim, opts),
            select_c0_wavenumber(k_out, min_dim, opts))


def surface_admittance(c, mat, med, omega, opts, min_dim=None):
    """Discretized surface admittance ``P^-1 U - P_out^-1 U_out`` of one conductor."""
    if not omega > 0:
        raise DomainError("omega must be positive")
    if min_dim is None:
        min_dim = min_transversal_dimension(c)
    k = wavenumber_conductor(mat, omega)
    k_out = wavenumber_medium(med, omega)
    c0_in, c0_out = _c0_pair(mat, k, k_out, omega, min_dim, opts)
    inner = assemble_pair(c, k, mat.mu, omega, c0_in, opts)
    outer = assemble_pair(c, k_out, med.mu, omega, c0_out, opts)
    y_in, cond_in = solve_pair(inner, "P")
    y_out, cond_out = solve_pair(outer, "P_out")
    return AdmittanceMatrix(y_in - y_out, (len(c),), (c0_in, c0_out), (cond_in, cond_out))


def field_coefficients(c, mat, med, omega, e, opts):
    """Magnetic fields and equivalent current for boundary field samples ``e``."""
    e = np.asarray(e, dtype=complex)
    min_dim = min_transversal_dimension(c)
    k = wavenumber_conductor(mat, omega)
    k_out = wavenumber_medium(med, omega)
    c0_in, c0_out = _c0_pair(mat, k, k_out, omega, min_dim, opts)
    inner = assemble_pair(c, k, mat.mu, omega, c0_in, opts)
    outer = assemble_pair(c, k_out, med.mu, omega, c0_out, opts)
    h = linalg.solve(inner.p, inner.u @ e)
    h_tilde = linalg.solve(outer.p, outer.u @ e)
    return FieldCoefficients(e, h, h_tilde)


def block_diag_admittance(ys):
    if not ys:
        raise ValueError("need at least one admittance block")
    sizes = tuple(n for y in ys for n in y.contour_sizes)
    c0 = tuple(v for y in ys for v in ([y.c0] if y.c0 else []))
    cond = tuple(v for y in ys for v in ([y.condition] if y.condition else []))
    return AdmittanceMatrix(linalg.block_diag(*[y.y for y in ys]), sizes, c0, cond)
