"""Exception hierarchy shared by all modules."""


class CasimirError(Exception):
    """Base class for every error raised by the library."""


class DomainError(CasimirError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class OverlapError(CasimirError, ValueError):
    """Two bodies touch or overlap; the weak-coupling formulas need a gap."""


class SingularityError(CasimirError, ArithmeticError):
    """A kernel or propagator was evaluated at a singular point."""


class ConvergenceError(CasimirError, ArithmeticError):
    """A sum, integral or series failed to reach the requested accuracy."""


class ConditioningError(CasimirError, ArithmeticError):
    """A matrix determinant is singular or numerically meaningless."""
