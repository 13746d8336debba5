"""Exception taxonomy shared across the toolkit."""


class SpectralForgeError(Exception):
    """Base class for all toolkit errors."""


class DomainError(SpectralForgeError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class InvalidShapeError(SpectralForgeError, ValueError):
    """Potential shape definition is unusable (empty table, bad knots, ...)."""


class OutOfRangeError(SpectralForgeError, ValueError):
    """Evaluation requested outside a curve's trusted coupling range."""


class BadDataError(SpectralForgeError, ValueError):
    """Input spectral data violates monotonicity/concavity requirements.

    Carries the offending rows so callers can report them.
    """

    def __init__(self, message, rows=None):
        super().__init__(message)
        self.rows = rows or []


class InsufficientDataError(BadDataError):
    """Too few valid samples to build the requested object."""


class NoBoundStateError(SpectralForgeError, RuntimeError):
    """No discrete level exists for the requested coupling.

    ``evidence`` records the bracketing information gathered while probing
    (coupling, largest box radius tried, node count at the top of the well).
    """

    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence or {}


class NoBindingError(NoBoundStateError):
    """The shape is nowhere attractive, so no coupling can bind."""


class ConvergenceError(SpectralForgeError, RuntimeError):
    """An iterative solve stalled before reaching its tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
