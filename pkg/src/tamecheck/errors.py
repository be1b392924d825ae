"""Exception hierarchy shared by every tamecheck module."""

from __future__ import annotations


class TamecheckError(Exception):
    """Base class for all package errors."""


class ParseError(TamecheckError, ValueError):
    """Lexing or parsing failure, optionally carrying a 1-based position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ValidationError(TamecheckError, ValueError):
    """Input is well formed but violates a standing assumption."""


class ContextMismatch(TamecheckError, ValueError):
    """Polynomials over different variable lists were combined."""


class BudgetExceeded(TamecheckError):
    """A configured computational cap was hit; the result is unknown, not wrong."""


class InconsistencyError(TamecheckError):
    """The implication audit found a binding premise HOLDS with its conclusion FAILS."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
