"""Exception hierarchy shared by all certipoly modules."""


class CertipolyError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(CertipolyError, ValueError):
    """An argument violates an operation's precondition."""


class DomainError(CertipolyError, ValueError):
    """A function was evaluated outside its real domain.

    ``subtree`` carries the offending expression (if any) so callers can
    report which part of a larger expression failed.
    """

    def __init__(self, message, subtree=None):
        super().__init__(message)
        self.subtree = subtree


class DivisibilityError(CertipolyError, ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


class DegenerateInputError(CertipolyError, ValueError):
    """Not enough usable evaluation nodes, vanishing leading terms, etc."""


class EndpointRootError(CertipolyError, ValueError):
    """A query endpoint is itself a root of the polynomial."""

    def __init__(self, message, endpoint):
        super().__init__(message)
        self.endpoint = endpoint


class ParseError(CertipolyError, ValueError):
    """Malformed data file; ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
