"""Cylinder Bessel, Neumann and Hankel functions of orders 0 and 1.

Complex arguments are handled by two expansions:

* ascending power series for ``|z| <= SERIES_SWITCH``, summed in extended
  precision when ``|z| > 5`` to absorb the cancellation between terms;
* the Hankel asymptotic expansion beyond, truncated before its smallest
  term (about ``exp(-2|z|)`` relative).

The mixed kernels ``c0*J_n(z) - 1j*Y_n(z)`` used by the contour-integral
Green function are evaluated as ``H2_n(z) + (c0 - 1)*J_n(z)``.  With
``c0 == 1`` only the outgoing Hankel function is formed, which stays finite
deep in the lower half plane where ``J_n`` and ``Y_n`` separately overflow.
"""

import math

import numpy as np

from .errors import DomainError

EULER_GAMMA = 0.57721566490153286061
SERIES_SWITCH = 17.0
DOUBLE_SWITCH = 5.0
HANKEL_SWITCH = 10.0
MAX_ABS_ARGUMENT = 1.0e4
ASYMPTOTIC_TERMS = 32

_LD = np.clongdouble


def _series_terms(zmax):
    # terms until (zmax/2)**(2k)/(k!)**2 drops below 1e-22 of the leading term
    q = (zmax / 2.0) ** 2
    term, k = 1.0, 0
    while True:
        k += 1
        term *= q / (k * k)
        if term < 1e-22 and k > q ** 0.5:
            return k + 2


def _series(z):
    """J0, Y0, J1, Y1 from the ascending series (z nonzero)."""
    n = _series_terms(float(np.max(np.abs(z))) if z.size else 0.0)
    q = -(z * z) / 4
    a = np.ones_like(z)          # q**k / (k!)**2
    b = np.ones_like(z)          # q**k / (k! (k+1)!)
    j0 = np.ones_like(z)
    s0 = np.zeros_like(z)        # sum a_k H_k
    j1s = np.ones_like(z)        # sum b_k
    s1 = np.full_like(z, 1.0 - 2 * EULER_GAMMA)   # sum b_k (H_k + H_{k+1} - 2 gamma)
    h = 0.0
    for k in range(1, n):
        h += 1.0 / k
        a = a * q / (k * k)
        b = b * q / (k * (k + 1))
        j0 = j0 + a
        s0 = s0 + a * h
        j1s = j1s + b
        s1 = s1 + b * (h + h + 1.0 / (k + 1) - 2 * EULER_GAMMA)
    half = z / 2
    log_half = np.log(half)
    j1 = half * j1s
    y0 = (2 / np.pi) * ((log_half + EULER_GAMMA) * j0 - s0)
    y1 = -2 / (np.pi * z) + (2 / np.pi) * log_half * j1 - half * s1 / np.pi
    return j0, y0, j1, y1


def _asymptotic_sums(z, nu):
    """Sums S+ = sum i**k a_k / z**k and S- = sum (-i)**k a_k / z**k.

    Each element stops accumulating once its terms start to grow.
    """
    mu = 4.0 * nu * nu
    a = 1.0
    inv = 1.0 / z
    power = np.ones_like(z)
    s_plus = np.ones_like(z)
    s_minus = np.ones_like(z)
    last = np.ones(z.shape)
    active = np.ones(z.shape, dtype=bool)
    for k in range(1, ASYMPTOTIC_TERMS):
        a *= (mu - (2 * k - 1) ** 2) / (8.0 * k)
        power = power * inv
        t = a * power
        size = np.abs(t)
        active &= size <= last
        last = size
        t = np.where(active, t, 0.0)
        s_plus = s_plus + (1j ** k) * t
        s_minus = s_minus + ((-1j) ** k) * t
    return s_plus, s_minus


def _hankel2_large(z, nu):
    _, s_minus = _asymptotic_sums(z, nu)
    omega = z - nu * np.pi / 2 - np.pi / 4
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        return np.sqrt(2 / (np.pi * z)) * np.exp(-1j * omega) * s_minus


def _jy_large(z, nu):
    s_plus, s_minus = _asymptotic_sums(z, nu)
    omega = z - nu * np.pi / 2 - np.pi / 4
    pref = np.sqrt(2 / (np.pi * z))
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        h1 = pref * np.exp(1j * omega) * s_plus
        h2 = pref * np.exp(-1j * omega) * s_minus
        return 0.5 * (h1 + h2), (h1 - h2) / 2j


def _split(z):
    az = np.abs(z)
    return az <= DOUBLE_SWITCH, (az > DOUBLE_SWITCH) & (az <= SERIES_SWITCH), az > SERIES_SWITCH


def bessel_jy(z):
    """Return ``(J0, Y0, J1, Y1)`` arrays for nonzero complex ``z``."""
    z = np.asarray(z, dtype=complex)
    out = [np.empty(z.shape, dtype=complex) for _ in range(4)]
    small, mid, large = _split(z)
    if np.any(small):
        for o, v in zip(out, _series(z[small])):
            o[small] = v
    if np.any(mid):
        for o, v in zip(out, _series(z[mid].astype(_LD))):
            o[mid] = v.astype(complex)
    if np.any(large):
        zl = z[large]
        j0, y0 = _jy_large(zl, 0)
        j1, y1 = _jy_large(zl, 1)
        for o, v in zip(out, (j0, y0, j1, y1)):
            o[large] = v
    return tuple(out)


def hankel2_pair(z):
    """Return ``(H2_0, H2_1)`` for nonzero complex ``z`` (no overflow for Im z < 0).

    In the lower half plane the series loses about ``|z| + |Im z|`` in
    exponent to cancellation, so the asymptotic form takes over earlier
    there.
    """
    z = np.asarray(z, dtype=complex)
    h0 = np.empty(z.shape, dtype=complex)
    h1 = np.empty(z.shape, dtype=complex)
    small, mid, large = _split(z)
    early = mid & (np.abs(z) > HANKEL_SWITCH) & (z.imag < 0)
    mid &= ~early
    large |= early
    for mask, cast in ((small, None), (mid, _LD)):
        if np.any(mask):
            zz = z[mask] if cast is None else z[mask].astype(cast)
            j0, y0, j1, y1 = _series(zz)
            h0[mask] = (j0 - 1j * y0).astype(complex)
            h1[mask] = (j1 - 1j * y1).astype(complex)
    if np.any(large):
        zl = z[large]
        h0[large] = _hankel2_large(zl, 0)
        h1[large] = _hankel2_large(zl, 1)
    return h0, h1


def _checked(z, singular):
    z = np.asarray(z, dtype=complex)
    az = np.abs(z)
    if np.any(az > MAX_ABS_ARGUMENT):
        raise DomainError(f"|z| exceeds {MAX_ABS_ARGUMENT:g}")
    if singular and np.any(az == 0.0):
        raise DomainError("Neumann function is singular at z = 0")
    return z


def _finite(values, name):
    if not np.all(np.isfinite(values)):
        raise OverflowError(f"{name} is not representable for the given argument")
    return values


def _jy_with_zero(z):
    zero = z == 0
    if not np.any(zero):
        return bessel_jy(z)
    safe = np.where(zero, 1.0, z)
    j0, y0, j1, y1 = bessel_jy(safe)
    j0 = np.where(zero, 1.0, j0)
    j1 = np.where(zero, 0.0, j1)
    return j0, y0, j1, y1


def j0(z):
    z = _checked(z, singular=False)
    return _finite(_jy_with_zero(z)[0], "J0")


def j1(z):
    z = _checked(z, singular=False)
    return _finite(_jy_with_zero(z)[2], "J1")


def y0(z):
    z = _checked(z, singular=True)
    return _finite(bessel_jy(z)[1], "Y0")


def y1(z):
    z = _checked(z, singular=True)
    return _finite(bessel_jy(z)[3], "Y1")


def hankel2_0(z):
    z = _checked(z, singular=True)
    return _finite(hankel2_pair(z)[0], "H2_0")


def hankel2_1(z):
    z = _checked(z, singular=True)
    return _finite(hankel2_pair(z)[1], "H2_1")


def mixed_kernels(z, c0=1.0):
    """Return ``(c0*J0 - 1j*Y0, c0*J1 - 1j*Y1)`` elementwise for nonzero ``z``."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("Green kernel is singular at zero distance")
    h0, h1 = hankel2_pair(z)
    if c0 != 1:
        j0_, _, j1_, _ = bessel_jy(z)
        with np.errstate(over="ignore", invalid="ignore"):   # _finite reports it
            h0 = h0 + (c0 - 1) * j0_
            h1 = h1 + (c0 - 1) * j1_
    return _finite(h0, "kernel"), _finite(h1, "kernel")


def mixed_kernel0(z, c0=1.0):
    """Return ``c0*J0(z) - 1j*Y0(z)`` elementwise."""
    return mixed_kernels(z, c0)[0]


def mixed_kernel1(z, c0=1.0):
    """Return ``c0*J1(z) - 1j*Y1(z)`` elementwise."""
    return mixed_kernels(z, c0)[1]


def cylinder_bessel_order0(z):
    """Return ``(J0(z), Y0(z))`` for a scalar complex argument.

    Raises DomainError at ``z == 0``, where Y0 is singular (J0(0) = 1), and
    OverflowError when a value is not representable.
    """
    z = complex(z)
    if z == 0:
        raise DomainError("Y0 is singular at z = 0 (J0(0) = 1)")
    _checked(z, singular=True)
    jz, yz, _, _ = bessel_jy(np.array([z]))
    return complex(_finite(jz, "J0")[0]), complex(_finite(yz, "Y0")[0])


def cylinder_bessel_order1(z):
    """Return ``(J1(z), Y1(z))`` for a scalar complex argument."""
    z = complex(z)
    if z == 0:
        raise DomainError("Y1 is singular at z = 0 (J1(0) = 0)")
    _checked(z, singular=True)
    _, _, jz, yz = bessel_jy(np.array([z]))
    return complex(_finite(jz, "J1")[0]), complex(_finite(yz, "Y1")[0])


def bessel_ratio_j0_j1(z):
    """J0(z)/J1(z) without overflow, for the round-wire impedance.

    For large |z| both functions are dominated by the same growing Hankel
    wave, so the ratio is formed from the asymptotic sums directly.
    """
    z = complex(z)
    if abs(z) <= SERIES_SWITCH or abs(z.imag) < 600:
        jz0, _, jz1, _ = bessel_jy(np.array([z]))
        return complex(jz0[0] / jz1[0])
    zz = np.array([z])
    sp0, sm0 = _asymptotic_sums(zz, 0)
    sp1, sm1 = _asymptotic_sums(zz, 1)
    # J_nu ~ (e^{i w_nu} S+ + e^{-i w_nu} S-)/2 with w_1 = w_0 - pi/2
    w0 = z - math.pi / 4
    if z.imag < 0:
        # e^{i w} dominates; divide numerator and denominator by it
        r = np.exp(-2j * w0)
        num = sp0 + r * sm0
        den = -1j * sp1 + 1j * r * sm1
    else:
        r = np.exp(2j * w0)
        num = r * sp0 + sm0
        den = -1j * r * sp1 + 1j * sm1
    return complex(num[0] / den[0])
