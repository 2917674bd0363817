"""Frequency sweep orchestration."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import logging
import math
import time

from .errors import DomainError, SingularMatrix
from .exterior import build_exterior, partial_RL, reduce_reference
from .geometry import min_transversal_dimension
from .operator import block_diag_admittance, surface_admittance

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrequencyRecord:
    frequency: float
    partial: object             # PulMatrices
    reduced: object = None      # PulMatrices or None
    c0: tuple = ()              # (c0_in, c0_out) per conductor
    condition: tuple = ()       # (cond P, cond P_out) per conductor
    efie_condition: float = math.nan
    seconds: float = 0.0


@dataclass(frozen=True)
class FailedFrequency:
    frequency: float
    error: str


@dataclass(frozen=True)
class SweepResult:
    records: tuple
    failures: tuple = ()
    names: tuple = ()
    reference: int = None
    meta: dict = field(default_factory=dict)

    @property
    def frequencies(self):
        return [r.frequency for r in self.records]

    @property
    def complete(self):
        return not self.failures


def solve_frequency(spec, ext, min_dims, frequency):
    """One sweep point; raises on solver failure."""
    t0 = time.perf_counter()
    omega = 2.0 * math.pi * frequency
    ys = [surface_admittance(c.contour, c.material, spec.medium, omega, spec.options, d)
          for c, d in zip(spec.conductors, min_dims)]
    partial = partial_RL(block_diag_admittance(ys), ext, omega, spec.medium)
    reduced = None if spec.reference is None else reduce_reference(partial, spec.reference)
    return FrequencyRecord(frequency, partial, reduced,
                           tuple(y.c0 for y in ys), tuple(y.condition for y in ys),
                           partial.condition, time.perf_counter() - t0)


def run_sweep(spec, threads=1, frequencies=None):
    """Solve every sweep frequency; failed points are reported, not dropped silently.

    Records come back in frequency order whatever the number of threads.
    """
    freqs = list(spec.sweep.frequencies() if frequencies is None else frequencies)
    contours = spec.contours
    ext = build_exterior(contours, spec.options.quad_points, spec.options.max_levels)
    min_dims = [min_transversal_dimension(c) for c in contours]

    def work(f):
        try:
            return solve_frequency(spec, ext, min_dims, f)
        except (SingularMatrix, DomainError, OverflowError, ValueError) as exc:
            log.warning("frequency %.6g Hz failed: %s", f, exc)
            return FailedFrequency(f, f"{type(exc).__name__}: {exc}")

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            out = list(pool.map(work, freqs))
    else:
        out = [work(f) for f in freqs]
    records = tuple(r for r in out if isinstance(r, FrequencyRecord))
    failures = tuple(r for r in out if isinstance(r, FailedFrequency))
    return SweepResult(records, failures, tuple(c.name for c in spec.conductors), spec.reference,
                       {"unknowns": sum(len(c) for c in contours)})
