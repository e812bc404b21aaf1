"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Operands have incompatible shapes or malformed entries."""


class PreconditionError(ValueError):
    """A documented precondition of an operation failed."""


class ConvergenceError(RuntimeError):
    """An iterative computation exhausted its iteration budget."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class MethodDisagreementError(RuntimeError):
    """Two independent algorithms for the same quantity disagree."""


class InternalCheckError(RuntimeError):
    """A freshly computed object failed its own structural re-validation."""
