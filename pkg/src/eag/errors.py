"""Exception hierarchy shared across the library.

The CLI maps these onto exit codes: usage errors -> 1, OutOfDomainError -> 2,
PreconditionError -> 3, CapExceededError -> 4.
"""


class EagError(Exception):
    """Base class for all library errors."""


class OutOfDomainError(EagError):
    """Parameters outside the classification domain (surface genus < 2)."""


class PreconditionError(EagError):
    """A mathematical precondition of the requested operation fails."""


class CapExceededError(EagError):
    """An enumeration would exceed the configured feasibility caps."""
