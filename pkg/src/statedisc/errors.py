"""Exception hierarchy.

The CLI maps these onto exit codes: ``ValidationError`` -> 2,
``NumericalError`` (and subclasses) -> 3, ``CapabilityError`` -> 4.
"""


class StateDiscError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(StateDiscError, ValueError):
    """Input does not satisfy a schema or a problem invariant.

    ``violations`` lists every failed check, not only the first one.
    """

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = list(violations or [message])


class NumericalError(StateDiscError, ArithmeticError):
    """A numerical routine failed (non-convergence, loss of definiteness)."""


class NotPositiveDefiniteError(NumericalError):
    """Matrix expected to be positive definite is not (to ``tol_rank``)."""

    def __init__(self, message, min_eigenvalue=None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class DependentStatesError(NotPositiveDefiniteError):
    """Gram matrix is singular: the pure states are linearly dependent."""


class InvalidStateError(NumericalError):
    """Matrix is not a valid density matrix (not PSD or not unit trace)."""


class CapabilityError(StateDiscError):
    """Requested computation exceeds a configured capability limit."""
