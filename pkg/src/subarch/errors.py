"""Exception hierarchy shared by the library, service, and CLI."""


class SubarchError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(SubarchError):
    """Malformed invocation: bad arguments, unknown verbs, missing files."""


class ValidationError(SubarchError):
    """Input data violates a structural contract (graphs, files, preconditions)."""


class ResourceLimitError(SubarchError):
    """A configured resource bound (state space, combinations, time) was exceeded."""


class CombinationLimitError(ResourceLimitError):
    """Shortest-path choice explosion exceeded the configured cap."""

    def __init__(self, message: str, combination_count: int, cap: int):
        super().__init__(message)
        self.combination_count = combination_count
        self.cap = cap


class TimeLimitError(ResourceLimitError):
    """Wall-clock budget expired; carries partial progress where available."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class LibraryFormatError(ValidationError):
    """Persisted candidate library is malformed or has an unsupported version."""


class HashMismatchError(ValidationError):
    """Persisted candidate library does not match the provided architecture."""
