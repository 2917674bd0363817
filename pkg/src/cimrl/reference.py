"""Closed-form oracles for sanity-checking solver output."""

from dataclasses import dataclass
import cmath
import math

from .errors import DomainError, ValidityError
from .medium import EPS0, MU0, Material, wavenumber_conductor
from .special import bessel_ratio_j0_j1

SEPARATION_GUARD = 5.0


@dataclass(frozen=True)
class RoundWireSpec:
    radius: float
    sigma: float
    mu: float = MU0

    def __post_init__(self):
        if not (self.radius > 0 and self.sigma > 0 and self.mu > 0):
            raise DomainError("radius, sigma and mu must be positive")


def round_wire_internal_impedance(s, omega, eps=EPS0):
    """Internal impedance (ohm/m) of a solid round wire, k/(2 pi a sigma) J0(ka)/J1(ka)."""
    if not omega > 0:
        raise DomainError("omega must be positive")
    k = wavenumber_conductor(Material(s.sigma, eps / EPS0, s.mu / MU0), omega)
    ka = k * s.radius
    ratio = bessel_ratio_j0_j1(ka)
    if not cmath.isfinite(ratio):
        raise DomainError(f"J1(ka) not representable at omega = {omega:g} rad/s")
    return k / (2.0 * math.pi * s.radius * s.sigma) * ratio


def dc_resistance(area, sigma):
    if not (area > 0 and sigma > 0):
        raise DomainError("area and sigma must be positive")
    return 1.0 / (sigma * area)


def separated_pair_external_inductance(a1, a2, d):
    """Loop inductance (H/m) of two thin parallel wires far apart."""
    if not (a1 > 0 and a2 > 0):
        raise DomainError("radii must be positive")
    if not d > SEPARATION_GUARD * (a1 + a2):
        raise ValidityError(
            f"spacing {d:g} m is below {SEPARATION_GUARD:g}*(a1 + a2); the thin-wire formula does not apply")
    return MU0 / (2.0 * math.pi) * math.log(d * d / (a1 * a2))
