"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument is outside its documented domain."""


class PreconditionError(ValueError):
    """A structural precondition fails (edge present/absent, zero vector, ...)."""


class DegenerateInputError(ValueError):
    """The input is degenerate for the requested operation (e.g. an
    isolated vertex makes the normalized operators undefined)."""


class NumericError(ArithmeticError):
    """Non-finite values or a failed numerical routine."""
