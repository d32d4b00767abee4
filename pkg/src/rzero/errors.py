"""Exception hierarchy shared across the package."""


class RZeroError(Exception):
    """Base class for all package errors."""


class InputError(RZeroError):
    """Malformed or inconsistent user input (CLI exit code 1)."""


class ModeError(RZeroError):
    """The requested analysis mode does not apply to the input (exit 2)."""


class InternalError(RZeroError):
    """An internal invariant failed; indicates a bug (exit 3)."""
