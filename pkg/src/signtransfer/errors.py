"""Exception types shared across the package."""

from __future__ import annotations


class CapExceeded(RuntimeError):
    """A desk-scale guard rail was hit.

    Carries the name of the cap, its value, and the CLI flag that raises it,
    so callers can print an actionable message.
    """

    def __init__(self, what: str, limit: int, flag: str | None = None):
        self.what = what
        self.limit = limit
        self.flag = flag
        msg = f"{what} exceeds cap of {limit}"
        if flag:
            msg += f" (raise with {flag})"
        super().__init__(msg)


class FormatError(ValueError):
    """Malformed text input; ``lineno`` is 1-based when known."""

    def __init__(self, msg: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            msg = f"line {lineno}: {msg}"
        super().__init__(msg)


class IncompleteTableError(RuntimeError):
    pass


class OracleInconsistency(RuntimeError):
    """Oracle answers contradict the sign-condition table in use."""
