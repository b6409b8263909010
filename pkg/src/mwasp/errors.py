"""Exception types shared across the package."""

from __future__ import annotations


class MwaspError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(MwaspError, ValueError):
    """A data invariant is violated (bad graph, demand, matching or parameter).

    ``subject`` carries the offending pair/node/value when one exists, so
    callers can report it without parsing the message.
    """

    def __init__(self, message: str, subject=None):
        super().__init__(message)
        self.subject = subject


class FormatError(MwaspError, ValueError):
    """A file could not be parsed; ``line`` is the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class UnreachablePairError(MwaspError):
    """A demand pair is not connected in the graph being evaluated."""

    def __init__(self, u: int, v: int):
        super().__init__(f"demand pair ({u}, {v}) is unreachable in the graph")
        self.pair = (u, v)
