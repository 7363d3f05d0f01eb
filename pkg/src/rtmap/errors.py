"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A construction parameter violates one of its required inequalities."""


class ChartDomainError(ValueError):
    """A point fell outside the declared chart window."""


class SearchExhaustedError(RuntimeError):
    """A branch search hit its depth bound without reaching the target."""


class PrecisionError(ArithmeticError):
    """A refinement shrank below what float64 can represent reliably."""
