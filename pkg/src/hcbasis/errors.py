"""Exception hierarchy shared by every module."""

from __future__ import annotations


class HcBasisError(Exception):
    """Base class for all package errors."""


class ParseError(HcBasisError, ValueError):
    """Malformed input text. ``line`` is the 1-based offending line, if known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(HcBasisError, ValueError):
    """A structural invariant does not hold (decomposition axioms, bipartiteness, ...)."""


class BudgetError(HcBasisError, RuntimeError):
    """Instance exceeds a configured size cap (vertex count, width, memory)."""
