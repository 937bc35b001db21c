"""Exception types shared across the toolkit.

Plain argument misuse (bad enum value, out-of-range parameter) raises the
built-in ValueError; everything that reflects bad *data* or a failed run
uses one of the classes below so the CLI can map it to an exit code.
"""

from __future__ import annotations


class PostmineError(Exception):
    """Base class for all toolkit errors."""


class ParseError(PostmineError):
    """A file could not be parsed. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(PostmineError):
    """Well-formed input that violates a data contract (duplicate ids,
    negative counts, overlapping lexicon entries, ...)."""


class InsufficientDataError(PostmineError):
    """An operation needs more data than it was given (e.g. correlations
    over a single document, clustering a single term)."""


class UndefinedIndicatorError(PostmineError):
    """Influence indicator requested for a post with zero followers."""


class ConfigError(PostmineError):
    """Pipeline configuration is invalid; raised before any stage runs."""


class DependencyError(PostmineError):
    """A CLI stage requires an artifact that an earlier stage has not produced."""

    def __init__(self, artifact: str, hint: str = ""):
        self.artifact = artifact
        msg = f"missing required artifact: {artifact}"
        if hint:
            msg += f" ({hint})"
        super().__init__(msg)


class StageError(PostmineError):
    """A pipeline stage failed. Wraps the stage name and the original cause."""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage '{stage}' failed: {cause}")
