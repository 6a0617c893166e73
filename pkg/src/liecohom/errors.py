"""Exception hierarchy shared by every module."""


class CohomologyError(Exception):
    """Base class for errors raised by liecohom."""


class FieldError(CohomologyError, ArithmeticError):
    """Bad field arithmetic: division by zero, mixed fields, bad scalar text."""


class ValidationError(CohomologyError, ValueError):
    """Structure data that violates antisymmetry, Jacobi or the representation law."""


class NotSplitError(CohomologyError):
    """A characteristic polynomial has roots outside the ground field."""


class NotSemisimpleError(CohomologyError):
    """An operator splits over the field but is not diagonalizable."""


class GradingError(CohomologyError, ValueError):
    """Theorem preconditions fail: wrong degree, inhomogeneous input, not a cocycle."""


class InternalError(CohomologyError, AssertionError):
    """A mathematical identity that must hold did not; indicates a bug."""


class ParseError(CohomologyError, ValueError):
    """Malformed algebra file or command-line value."""
