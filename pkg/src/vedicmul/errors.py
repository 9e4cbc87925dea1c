"""Exception types shared across the package."""


class ParseError(ValueError):
    """A digit string could not be read in the requested radix."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class UnderflowError(ArithmeticError):
    """Natural subtraction with a larger subtrahend."""


class DomainError(ValueError):
    """An argument outside the operation's domain (zero base, zero input, ...)."""


class AlgorithmError(RuntimeError):
    """An internal invariant of a multiplication algorithm failed.

    This never signals bad input; it means the implementation is wrong.
    """


class CrossCheckError(AlgorithmError):
    """Two multiplication paths disagreed on the same operands."""
