class JohnsonTuranError(Exception):
    """Base class for operational errors raised by this package."""


class DomainError(JohnsonTuranError, ValueError):
    """Inputs outside an operation's domain (bad parameters, mismatched ground sets)."""


class SizingError(JohnsonTuranError):
    """An instance exceeds a configured cap or search budget."""

    def __init__(self, message: str, *, limit: int | None = None, requested: int | None = None):
        super().__init__(message)
        self.limit = limit
        self.requested = requested
