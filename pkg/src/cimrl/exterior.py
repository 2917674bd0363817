"""Exterior EFIE coupling and partial p.u.l. resistance/inductance.

With every conductor replaced by the surrounding medium plus its
equivalent current ``J = Ys E``, point matching the EFIE gives

    E = -j*omega*mu_l * G0 @ J + Q @ Z @ I,     I = Q.T @ W @ J

where ``G0[m, n] = int_n -(1/2pi) ln|r_m - r'| dr'`` is the 2-D Laplace
Green matrix.  Eliminating E and J leaves

    Z = [Q.T W (1 + j*omega*mu_l Ys G0)^-1 Ys Q]^-1,   R = Re Z, L = Im Z / omega.
"""

from dataclasses import dataclass, field
import math
import warnings

import numpy as np
from scipy import linalg

from .errors import AsymmetryWarning, DomainError, SingularMatrix
from .geometry import check_disjoint
from .quadrature import build_plan, integrate

ASYMMETRY_TOLERANCE = 1e-6


@dataclass(frozen=True)
class ExteriorSystem:
    g0: np.ndarray
    q: np.ndarray
    w: np.ndarray
    sizes: tuple


@dataclass(frozen=True)
class PulMatrices:
    """Per-unit-length R (ohm/m) and L (H/m) at one frequency."""

    r: np.ndarray
    l: np.ndarray
    frequency: float
    asymmetry: float = 0.0
    condition: float = field(default=float("nan"), compare=False)

    @property
    def z(self):
        return self.r + 2j * math.pi * self.frequency * self.l

    @property
    def size(self):
        return self.r.shape[0]


def assemble_G0(contours, quad_points=5, max_levels=6):
    """Laplace Green matrix over all segments of all contours, in conductor order."""
    if not contours:
        raise ValueError("need at least one contour")
    check_disjoint(contours)
    mids = np.vstack([c.midpoints for c in contours])
    starts = np.vstack([c.starts for c in contours])
    ends = np.vstack([c.ends for c in contours])
    widths = np.concatenate([c.widths for c in contours])
    plan = build_plan(mids, starts, ends, q=quad_points, max_levels=max_levels, self_pairs=True)

    def kernel(d_vec, cols):
        return np.log(np.hypot(d_vec[..., 0], d_vec[..., 1]))

    g0 = (-1.0 / (2.0 * math.pi)) * integrate(plan, mids, kernel).real
    g0[np.diag_indices_from(g0)] = -widths * (np.log(widths / 2.0) - 1.0) / (2.0 * math.pi)
    return g0


def assemble_Q(sizes):
    sizes = list(sizes)
    if not sizes or min(sizes) < 1:
        raise ValueError("every conductor needs at least one segment")
    q = np.zeros((sum(sizes), len(sizes)))
    start = 0
    for p, n in enumerate(sizes):
        q[start:start + n, p] = 1.0
        start += n
    return q


def assemble_W(contours):
    return np.diag(np.concatenate([c.widths for c in contours]))


def build_exterior(contours, quad_points=5, max_levels=6):
    """Frequency-independent G0, Q, W for a set of conductors."""
    sizes = tuple(len(c) for c in contours)
    return ExteriorSystem(assemble_G0(contours, quad_points, max_levels), assemble_Q(sizes),
                          assemble_W(contours), sizes)


def _symmetrize(a):
    sym = 0.5 * (a + a.T)
    scale = np.max(np.abs(sym))
    resid = float(np.max(np.abs(a - a.T)) / scale) if scale > 0 else 0.0
    return sym, resid


def partial_RL(ys, ext, omega, med):
    """Partial R and L matrices for block-diagonal surface admittance ``ys``."""
    if not omega > 0:
        raise DomainError("omega must be positive")
    y = ys.y if hasattr(ys, "y") else np.asarray(ys)
    n = ext.g0.shape[0]
    if y.shape != (n, n):
        raise ValueError(f"admittance is {y.shape}, exterior system has {n} unknowns")
    a = np.eye(n) + (1j * omega * med.mu) * (y @ ext.g0)
    try:
        lu_piv = linalg.lu_factor(a)
    except (ValueError, np.linalg.LinAlgError) as exc:
        raise SingularMatrix(f"EFIE operator factorization failed: {exc}") from exc
    if not np.all(np.abs(np.diag(lu_piv[0])) > 0):
        raise SingularMatrix("EFIE operator is singular", math.inf)
    gecon, = linalg.get_lapack_funcs(("gecon",), (lu_piv[0],))
    rcond, _ = gecon(lu_piv[0], np.linalg.norm(a, 1), norm="1")
    # M = Q^T W (1 + j w mu Ys G0)^-1 Ys Q
    m = ext.q.T @ (np.diag(ext.w)[:, None] * linalg.lu_solve(lu_piv, y @ ext.q))
    try:
        z = linalg.solve(m, np.eye(m.shape[0]))
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix(f"current-to-voltage matrix is singular: {exc}",
                             np.linalg.cond(m)) from exc
    r, resid_r = _symmetrize(z.real)
    x, resid_x = _symmetrize(z.imag)
    resid = max(resid_r, resid_x)
    if resid > ASYMMETRY_TOLERANCE:
        warnings.warn(f"p.u.l. matrix asymmetry {resid:.2e} exceeds {ASYMMETRY_TOLERANCE:g}",
                      AsymmetryWarning, stacklevel=2)
    cond = math.inf if rcond == 0 else 1.0 / rcond
    return PulMatrices(r, x / omega, omega / (2.0 * math.pi), resid, cond)


def reduce_reference(p, ref):
    """Loop matrices with conductor ``ref`` as the return path."""
    size = p.r.shape[0]
    if size < 2:
        raise ValueError("reference reduction needs at least two conductors")
    if not 0 <= ref < size:
        raise IndexError(f"reference conductor {ref} out of range 0..{size - 1}")
    keep = [i for i in range(size) if i != ref]

    def reduce(a):
        a = np.asarray(a)
        return (a[np.ix_(keep, keep)] + a[ref, ref]
                - a[np.ix_(keep, [ref])] - a[np.ix_([ref], keep)])

    return PulMatrices(reduce(p.r), reduce(p.l), p.frequency, p.asymmetry, p.condition)
