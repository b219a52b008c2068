"""Exception types shared across the library."""


class GuardExceeded(RuntimeError):
    """A computation was requested beyond its configured size guard."""


class InternalCheckError(RuntimeError):
    """Two supposedly-equal internal computations disagreed.

    Raised when redundant formula paths (kept deliberately) produce
    different values; always indicates a bug, never bad user input.
    """
