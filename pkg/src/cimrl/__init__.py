"""Per-unit-length resistance and inductance of multiconductor lines.

Each conductor is reduced to a surface admittance operator built with the
contour integral method; the operators are coupled through an exterior
electric field integral equation.
"""

from .config import ProblemSpec, load_config, parse_config
from .errors import (
    AsymmetryWarning,
    DomainError,
    GeometryOverlap,
    InvalidGeometry,
    ParseError,
    SingularMatrix,
    ValidationError,
    ValidityError,
)
from .exterior import PulMatrices, build_exterior, partial_RL, reduce_reference
from .geometry import Contour, make_arc_strip, make_circle, make_polygon, make_rect
from .medium import Material, MediumSpec, SolverOptions
from .operator import block_diag_admittance, surface_admittance
from .sweep import SweepResult, run_sweep

__version__ = "0.1.0"
