"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class ParameterRangeError(DomainError):
    """The exponent p lies outside the admissible range [1, c/(c-1))."""


class PreconditionError(DomainError):
    """A documented precondition of a verification routine does not hold."""


class NonIntegrableError(ArithmeticError):
    """The requested integral diverges (e.g. a power weight raised past its critical exponent)."""
