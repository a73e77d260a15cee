"""Exception hierarchy."""


class IzetaError(Exception):
    """Base class for all library errors."""


class BudgetExceededError(IzetaError, ValueError):
    """An exact enumeration was requested outside its size budget."""


class DomainError(IzetaError, ValueError):
    """An argument lies outside the region where the operation is defined."""


class SingularPencilError(IzetaError, ValueError):
    """B - I is singular, so the companion linearization does not exist."""


class NumericalError(IzetaError, ArithmeticError):
    """A dense eigen/singular-value routine failed to converge."""


class GenerationError(IzetaError, RuntimeError):
    """A randomized graph construction ran out of attempts."""
