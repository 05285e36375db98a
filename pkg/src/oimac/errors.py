"""Exception hierarchy shared by the bound engines and the command-line front end."""


class OimacError(Exception):
    """Base class for every error raised by :mod:`oimac`."""


class DomainError(OimacError, ValueError):
    """An argument lies outside the domain of the operation."""


class BracketError(OimacError, ValueError):
    """A root-finding bracket does not contain a sign change."""


class InconsistentDensityError(OimacError, ArithmeticError):
    """A density failed the normalization check during quadrature."""


class UnsupportedInputError(OimacError, TypeError):
    """The input law is not supported by the requested engine."""


class ArityError(OimacError, ValueError):
    """Wrong number of users (or wrong rate-tuple dimension)."""


class SizeError(OimacError, ValueError):
    """A combinatorial enumeration would exceed the configured size guard."""


class BudgetError(OimacError, RuntimeError):
    """An iterative solver ran out of iterations before reaching its tolerance.

    Attributes
    ----------
    last_bracket : float
        Capacity bracket width (nats) at the last completed iteration.
    """

    def __init__(self, message, last_bracket):
        super().__init__(message)
        self.last_bracket = last_bracket
