"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Inputs violate a documented precondition (grid mismatch, bad indices, ...)."""


class DomainError(ValueError):
    """Evaluation requested at a pole."""


class PrecisionError(ValueError):
    """A zero sits too close to the circle for the configured band."""


class NotConstructibleError(ValueError):
    """The divisibility condition required by a construction does not hold."""


class InvariantViolation(RuntimeError):
    """An internal step failed although its precondition was verified."""
