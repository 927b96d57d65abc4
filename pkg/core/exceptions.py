"""
Exception hierarchy shared by every core module.
"""

from typing import Optional


class AlgebraError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(AlgebraError, ValueError):
    """Operands live in spaces of different dimension or shape."""


class PreconditionError(AlgebraError, ValueError):
    """An operation was called on input that violates its precondition."""


class InvariantViolation(AlgebraError, RuntimeError):
    """An internal consistency check failed."""


class FormatError(AlgebraError, ValueError):
    """Malformed serialized input."""

    def __init__(self, message: str, path: Optional[str] = None,
                 line: Optional[int] = None):
        self.path = path
        self.line = line
        location = ''
        if path is not None:
            location = f"{path}"
            if line is not None:
                location += f":{line}"
            location += ': '
        super().__init__(f"{location}{message}")
