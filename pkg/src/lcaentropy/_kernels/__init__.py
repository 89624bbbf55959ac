"""Join-statistics kernel selection.

The compiled Cython core is used when it was built and the itinerary key
space fits 63 bits; the pure numpy kernel covers everything else.  Set
LCA_ENTROPY_KERNEL=pure|cython to force a backend, or pass ``impl=`` to
:func:`join_stats` directly.
"""

from __future__ import annotations

import os

import numpy as np

from ..errors import check_cap
from . import pure

try:
    from . import _join_cy
except ImportError:  # extension not built
    _join_cy = None

_KEY_LIMIT = 1 << 63


def available_backends() -> tuple[str, ...]:
    return ("cython", "pure") if _join_cy is not None else ("pure",)


def active_backend() -> str:
    """Backend 'auto' resolves to for small key spaces."""
    forced = os.environ.get("LCA_ENTROPY_KERNEL", "auto")
    if forced in ("cython", "pure"):
        return forced
    return "cython" if _join_cy is not None else "pure"


def join_stats(
    m: int,
    l: int,
    r: int,
    coeffs,
    base_lo: int,
    base_hi: int,
    steps: int,
    pi,
    P,
    cap: int,
    impl: str | None = None,
) -> tuple[float, int]:
    """Entropy (nats) and positive-measure class count of the n-fold join.

    Enumerates the m^K words of the dependency window (base window widened
    by (steps-1)*l left and (steps-1)*r right), groups them by itinerary,
    and sums cylinder measures per class.  Raises CapExceededError when
    m^K exceeds ``cap``.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if base_lo > base_hi:
        raise ValueError("base window is empty")
    span = l + r
    w = base_hi - base_lo + 1
    K = w + (steps - 1) * span
    total = m**K
    check_cap(total, cap)

    choice = impl or os.environ.get("LCA_ENTROPY_KERNEL", "auto")
    key_fits = m ** (steps * w) <= _KEY_LIMIT and total <= _KEY_LIMIT
    if choice == "auto":
        use_cy = _join_cy is not None and key_fits
    elif choice == "cython":
        if _join_cy is None:
            raise RuntimeError("compiled kernel is not available in this install")
        if not key_fits:
            raise RuntimeError("itinerary key space exceeds the compiled kernel's 63-bit limit")
        use_cy = True
    elif choice == "pure":
        use_cy = False
    else:
        raise ValueError(f"unknown kernel backend {choice!r}")

    pi_c = np.ascontiguousarray(pi, dtype=np.float64)
    P_c = np.ascontiguousarray(P, dtype=np.float64)
    if use_cy:
        return _join_cy.join_stats(
            m, l, r, tuple(coeffs), base_lo, base_hi, steps, pi_c, P_c, total
        )
    return pure.join_stats(
        m, l, r, tuple(coeffs), base_lo, base_hi, steps, pi_c, P_c, total
    )
