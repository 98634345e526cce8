"""Custom exceptions for lpa-chen.

Domain rejections derive from :class:`LpaError` and map to exit code 1 on
the command line; text that cannot be parsed raises :class:`ParseError`
(exit code 2).
"""

from __future__ import annotations


class LpaError(Exception):
    """Base class for rejections of well-formed but invalid requests."""


class UnknownIdError(LpaError):
    """Raised when a vertex or edge id is not declared in the graph."""


class PathError(LpaError):
    """Raised for non-composable edge sequences and out-of-range indices."""


class GraphMismatchError(LpaError):
    """Raised when two values built over different graphs are combined."""


class PreconditionError(LpaError):
    """Raised when an operation's input identity does not hold.

    Examples are ``q·α ≠ x`` for the solve-for-q expansion or an element
    not supported at ``s(d)`` for the d-degree decomposition.
    """


class MalformedSpecError(LpaError):
    """Raised when an infinite-path spec cannot be canonicalized.

    ``reason`` is a short machine-readable tag such as
    ``"not-strongly-connected"`` or ``"no-branching-vertex"``.
    """

    def __init__(self, message: str, reason: str = "malformed") -> None:
        super().__init__(message)
        self.reason = reason


class UndeterminedRegionError(LpaError):
    """Raised when a probe reaches past the determined prefix of an irrational key.

    ``needed`` is the prefix length the caller would have to supply.
    """

    def __init__(self, message: str, needed: int) -> None:
        super().__init__(message)
        self.needed = needed


class ParseError(Exception):
    """Raised for malformed graph documents, expressions and path specs.

    Carries the 1-based ``line`` and ``column`` of the offending token.
    """

    def __init__(self, message: str, line: int = 1, column: int = 1) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class ConfigError(Exception):
    """Raised when the YAML configuration holds an unusable value."""
