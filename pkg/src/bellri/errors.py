"""Exception types shared across the library."""


class BellriError(Exception):
    """Base class for errors raised by this package."""


class DomainError(BellriError, ValueError):
    """An argument falls outside an operation's documented domain."""


class ValidationError(DomainError):
    """A value fails one of its structural invariants (named in the message)."""
