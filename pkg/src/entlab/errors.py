"""Exception types shared across the package."""


class EntlabError(Exception):
    """Base class for all entlab errors."""


class ValidationError(EntlabError, ValueError):
    """An input violates a documented precondition or invariant."""


class NotHermitianError(ValidationError):
    """A matrix required to be Hermitian is not, beyond tolerance."""


class InvalidStateError(ValidationError):
    """A density matrix is too far from physical to evaluate."""


class EigensolverError(EntlabError, RuntimeError):
    """The dense eigensolver failed to converge.

    Carries the residual (when one could be computed) in ``residual``.
    """

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class BracketError(ValidationError):
    """A root bracket does not actually bracket the feature searched for."""
