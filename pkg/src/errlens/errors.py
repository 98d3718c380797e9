"""Exception types shared across the package.

Everything raised on purpose derives from ErrlensError so callers can
catch the whole family in one clause when they want blanket degradation.
"""

from __future__ import annotations


class ErrlensError(Exception):
    """Base class for every error this package raises deliberately."""


class NotAnError(ErrlensError):
    """The captured stderr does not end in a recognizable error report."""


class MalformedTable(ErrlensError):
    """A bundled knowledge table failed validation.

    Carries the offending file name and 1-based line number (0 when the
    whole file is missing or unreadable).
    """

    def __init__(self, file: str, line: int, reason: str):
        super().__init__(f"{file}:{line}: {reason}")
        self.file = file
        self.line = line
        self.reason = reason


class EmptyQuery(ErrlensError):
    """Query construction produced no usable text for this error."""


class TransportError(ErrlensError):
    """The remote search service failed or asked us to back off.

    status is the HTTP status code, 0 for network-level failures.
    """

    def __init__(self, status: int, detail: str):
        super().__init__(f"transport failure (status {status}): {detail}")
        self.status = status
        self.detail = detail


class QuotaExhausted(ErrlensError):
    """The remote search service reports no request quota left."""


class UnparseableBody(ErrlensError):
    """An answer body yielded neither prose sentences nor code blocks."""


class UnknownKind(ErrlensError):
    """No bundled documentation excerpt exists for this error kind."""


class ScriptNotFound(ErrlensError):
    """The script path given to the runner does not exist."""


class InterpreterNotFound(ErrlensError):
    """The requested interpreter executable cannot be resolved."""
