"""Exception types shared across the package."""


class BerezinError(Exception):
    """Base class for all package-specific errors."""


class NotHermitian(BerezinError):
    """Input expected to be Hermitian deviates beyond tolerance."""


class NotPositive(BerezinError):
    """Input expected positive semidefinite has a genuinely negative eigenvalue."""


class NotCommuting(BerezinError):
    """Operand pair expected to commute has a commutator beyond tolerance."""


class NoConvergence(BerezinError):
    """An iterative eigensolver failed to converge."""


class DimensionMismatch(BerezinError):
    """Operand shapes are incompatible with each other or with the model."""


class PointOutOfDomain(BerezinError):
    """Evaluation point lies outside the model's domain."""


class ParamOutOfRange(BerezinError):
    """A numeric parameter violates its documented range."""


class UnknownIneqId(BerezinError):
    """No catalog entry carries the requested id."""
