"""Exception types shared across the library."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SupportError(DomainError):
    """A density was queried outside (or on the boundary of) its support."""


class MomentDivergenceError(DomainError):
    """The requested moment does not exist for the given parameters."""


class ConvergenceError(RuntimeError):
    """A series evaluation failed to converge within the allowed term budget."""
