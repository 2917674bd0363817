"""Materials, wavenumbers, skin depth and the C0 selection rule."""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError

MU0 = 4e-7 * math.pi
EPS0 = 8.8541878128e-12
C0_LIGHT = 1.0 / math.sqrt(MU0 * EPS0)


@dataclass(frozen=True)
class Material:
    """Conductor material: conductivity (S/m) and relative eps, mu."""

    sigma: float
    eps_r: float = 1.0
    mu_r: float = 1.0

    def __post_init__(self):
        if self.sigma < 0:
            raise DomainError("conductivity must be non-negative")
        if not (self.eps_r > 0 and self.mu_r > 0):
            raise DomainError("relative permittivity and permeability must be positive")

    @property
    def mu(self):
        return self.mu_r * MU0

    @property
    def eps(self):
        return self.eps_r * EPS0


@dataclass(frozen=True)
class MediumSpec:
    """Lossless homogeneous medium surrounding the conductors."""

    eps_r_l: float = 1.0
    mu_r_l: float = 1.0

    def __post_init__(self):
        if not (self.eps_r_l > 0 and self.mu_r_l > 0):
            raise DomainError("medium eps_r_l and mu_r_l must be positive")

    @property
    def mu(self):
        return self.mu_r_l * MU0

    @property
    def eps(self):
        return self.eps_r_l * EPS0

    def as_material(self):
        """The medium viewed as a (lossless) conductor material."""
        return Material(0.0, self.eps_r_l, self.mu_r_l)


@dataclass(frozen=True)
class SolverOptions:
    c0_low: complex = 1.0e6
    c0_high: complex = 1.0
    t_switch: float = 0.5
    quad_points: int = 5
    max_levels: int = 6

    def __post_init__(self):
        if not 0 < self.t_switch <= 1:
            raise DomainError("t_switch must lie in (0, 1]")
        if self.quad_points < 2:
            raise DomainError("quad_points must be at least 2")
        if self.max_levels < 0:
            raise DomainError("max_levels must be non-negative")


def _check_omega(omega):
    if not omega > 0:
        raise DomainError(f"angular frequency must be positive, got {omega}")


def wavenumber_conductor(m, omega):
    """k = sqrt(omega*mu*(omega*eps - j*sigma)), branch with Im(k) <= 0."""
    _check_omega(omega)
    k = np.sqrt(complex(omega * m.mu * (omega * m.eps), -omega * m.mu * m.sigma))
    if k.imag > 0 or (k.imag == 0 and k.real < 0):
        k = -k
    return complex(k)


def wavenumber_medium(med, omega):
    _check_omega(omega)
    return omega * math.sqrt(med.mu * med.eps)


def skin_depth(m, omega):
    if not m.sigma > 0:
        raise DomainError("skin depth is undefined for a non-conducting material")
    _check_omega(omega)
    return math.sqrt(2.0 / (omega * m.mu * m.sigma))


def select_c0(delta_p, min_dim, opts):
    """Low-frequency C0 while min_dim / skin_depth <= t_switch."""
    if min_dim / delta_p <= opts.t_switch:
        return opts.c0_low
    return opts.c0_high


def select_c0_wavenumber(k, min_dim, opts):
    """Same rule written with |k| = sqrt(2)/delta, usable for lossless media."""
    if abs(k) * min_dim <= opts.t_switch * math.sqrt(2.0):
        return opts.c0_low
    return opts.c0_high


def select_c0_material(m, k, omega, min_dim, opts):
    if m.sigma > 0:
        return select_c0(skin_depth(m, omega), min_dim, opts)
    return select_c0_wavenumber(k, min_dim, opts)
