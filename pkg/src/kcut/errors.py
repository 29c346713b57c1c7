"""Shared exception types."""


class KcutError(Exception):
    """Base class for library-specific failures."""


class Infeasible(KcutError):
    """The requested cut does not exist (e.g. k exceeds the vertex count)."""


class BudgetExceeded(KcutError):
    """An exact-enumeration oracle was asked to exceed its instance budget."""


class ParseError(KcutError):
    """Malformed graph text; carries a 1-based line number when known."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else "line %d: %s" % (line, message))
        self.line = line
