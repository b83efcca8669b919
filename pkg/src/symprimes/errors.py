"""Exception types shared across the package."""


class SymprimesError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(SymprimesError, ValueError):
    """An argument violates a documented precondition."""


class OutOfRangeError(SymprimesError, LookupError):
    """A query needs data beyond the bounds the tables were built for.

    ``required_bound``, when known, names the smallest table bound that
    would satisfy the query, so callers can rebuild instead of guessing.
    """

    def __init__(self, message: str, required_bound: int | None = None):
        super().__init__(message)
        self.required_bound = required_bound


class ResourceError(SymprimesError):
    """An allocation was refused or failed; carries the requested size."""

    def __init__(self, message: str, requested_bytes: int | None = None):
        super().__init__(message)
        self.requested_bytes = requested_bytes
