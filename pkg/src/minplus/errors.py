"""Shared exception types."""

from __future__ import annotations


class MinplusError(Exception):
    """Base class for errors raised by this package."""


class DimensionMismatch(MinplusError):
    """Operands live in different ambient dimensions."""


class FormatError(MinplusError):
    """A text input could not be parsed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapExceeded(MinplusError):
    """Cell enumeration hit the configured work cap.

    The search is abandoned rather than silently truncated; ``explored``
    reports how many branch steps were taken before giving up.
    """

    def __init__(self, cap: int, explored: int):
        self.cap = cap
        self.explored = explored
        super().__init__(
            f"cell enumeration exceeded the work cap ({explored} branch steps, cap {cap}); "
            f"raise the cap to continue"
        )


class EmptyPrevariety(MinplusError):
    """An operation that needs a nonempty intersection got an empty one."""
