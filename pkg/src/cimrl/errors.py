"""Exception and warning types raised by the solver."""

import numpy as np


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class InvalidGeometry(ValueError):
    """A contour violates closure, orientation or simplicity."""


class GeometryOverlap(InvalidGeometry):
    """Two conductor contours intersect."""


class SingularMatrix(np.linalg.LinAlgError):
    """A factorization failed; carries a condition-number estimate."""

    def __init__(self, message, condition=None):
        if condition is not None:
            message = f"{message} (condition estimate {condition:.3e})"
        super().__init__(message)
        self.condition = condition


class ValidityError(ValueError):
    """An analytic oracle was called outside its range of validity."""


class ParseError(ValueError):
    """Configuration document could not be parsed."""


class ValidationError(ValueError):
    """Configuration parsed but violates a problem invariant."""


class AsymmetryWarning(UserWarning):
    """A computed p.u.l. matrix deviates from symmetry beyond tolerance."""
