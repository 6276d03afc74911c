"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the domain where a quantity is defined."""


class SolverError(RuntimeError):
    """An iterative solver failed to meet its tolerance."""


class ResourceError(RuntimeError):
    """A summation needed more terms than the configured hard cap."""
