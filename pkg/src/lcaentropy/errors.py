"""Exception types and the shared enumeration guard."""

from __future__ import annotations

# Default ceiling on the number of table entries / words any exhaustive
# enumeration is allowed to touch.  Desk-scale bound; every enumerating
# operation takes a ``cap`` argument to override it.
DEFAULT_CAP = 1 << 24


class LcaEntropyError(Exception):
    """Base class for all errors raised by this package."""


class CapExceededError(LcaEntropyError):
    """An exhaustive enumeration would exceed the configured cap."""

    def __init__(self, needed: int, cap: int):
        super().__init__(
            f"enumeration needs {needed} entries, exceeding the cap of {cap}; "
            "raise the cap to proceed"
        )
        self.needed = needed
        self.cap = cap


class WordTooShortError(LcaEntropyError, ValueError):
    """A word is too narrow for the requested operation."""


class ModulusMismatchError(LcaEntropyError, ValueError):
    """Two rules with different moduli were combined."""


class NotBipermutativeError(LcaEntropyError, ValueError):
    """A closed-form entropy was requested for a non-bipermutative rule."""


class WidthExceededError(LcaEntropyError):
    """Rule iteration produced a support wider than the configured maximum."""


class StationaryConvergenceError(LcaEntropyError):
    """Power iteration failed to converge (periodic or reducible chain)."""


def check_cap(needed: int, cap: int) -> None:
    """Raise :class:`CapExceededError` if ``needed`` exceeds ``cap``."""
    if needed > cap:
        raise CapExceededError(needed, cap)
