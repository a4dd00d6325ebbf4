"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class OutsideDiskError(ValidationError):
    """Point expected strictly inside the unit disk."""


class ThreeCoincideError(ValidationError):
    """Three or more unit vectors coincide; the configuration is inadmissible."""


class ResourceLimitError(RuntimeError):
    """A generation bound (cell count, iteration cap) was exceeded."""


class OutOfRangeError(LookupError):
    """Query point lies outside the generated region."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach its tolerance within its budget."""
