"""Exception types shared across the package."""
from __future__ import annotations


class MonosplitError(Exception):
    pass


class ArgumentError(MonosplitError, ValueError):
    """Domain or precondition violation in an argument."""


class ResourceError(MonosplitError):
    """A size or depth limit would be exceeded."""


class FlipUndefinedError(MonosplitError):
    """The arc borders the same triangle on both sides."""


class GeometryError(MonosplitError):
    """A path runs through a marker or is otherwise degenerate."""


class NotMatchingError(MonosplitError):
    """Transported vanishing data at the two ends of a path do not match.

    ``certificate`` holds the data that witnesses the failure.
    """

    def __init__(self, message: str, certificate: dict):
        super().__init__(message)
        self.certificate = certificate
