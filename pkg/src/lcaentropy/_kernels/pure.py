"""Pure numpy kernel for itinerary-join statistics.

Streams the words of the dependency window in lexicographic blocks,
computes every word's itinerary and Markov measure vectorized, and groups
measure mass by packed itinerary key.  Memory stays proportional to the
block size plus the number of distinct itinerary classes, never to the
word count.
"""

from __future__ import annotations

import math

import numpy as np

_BLOCK = 1 << 18
_KEY_LIMIT = 1 << 63


def digit_matrix(m: int, width: int, lo: int, hi: int) -> np.ndarray:
    """Base-m digit rows (most significant first) of the integers lo..hi-1."""
    vals = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((hi - lo, width), dtype=np.int64)
    for j in range(width - 1, -1, -1):
        out[:, j] = vals % m
        vals //= m
    return out


def join_stats(
    m: int,
    l: int,
    r: int,
    coeffs,
    base_lo: int,
    base_hi: int,
    steps: int,
    pi: np.ndarray,
    P: np.ndarray,
    total: int,
    block: int = _BLOCK,
) -> tuple[float, int]:
    """Entropy (nats) and positive-measure class count of the n-fold join.

    ``total`` must equal m ** K for the dependency-window width K; the
    caller enforces the enumeration cap.  Itinerary keys are packed base-m
    integers when they fit 63 bits, tuples of per-step labels otherwise.
    """
    span = l + r
    w = base_hi - base_lo + 1
    K = w + (steps - 1) * span
    fits64 = m ** (steps * w) <= _KEY_LIMIT

    masses: dict = {}
    step_base = np.uint64(m**w) if fits64 else None
    for lo_i in range(0, total, block):
        hi_i = min(lo_i + block, total)
        D = digit_matrix(m, K, lo_i, hi_i)
        B = hi_i - lo_i

        mass = pi[D[:, 0]].astype(np.float64)
        for j in range(K - 1):
            mass *= P[D[:, j], D[:, j + 1]]

        R = D
        if fits64:
            key = np.zeros(B, dtype=np.uint64)
        else:
            labels = np.empty((B, steps), dtype=np.uint64)
        for k in range(steps):
            off = (steps - 1 - k) * l
            slab = R[:, off : off + w]
            step_key = np.zeros(B, dtype=np.uint64)
            for t in range(w):
                step_key = step_key * np.uint64(m) + slab[:, t].astype(np.uint64)
            if fits64:
                key = key * step_base + step_key
            else:
                labels[:, k] = step_key
            if k < steps - 1:
                out_len = R.shape[1] - span
                acc = np.zeros((B, out_len), dtype=np.int64)
                for t, cf in enumerate(coeffs):
                    if cf:
                        acc += cf * R[:, t : t + out_len]
                R = acc % m

        if fits64:
            uniq, inv = np.unique(key, return_inverse=True)
            sums = np.bincount(inv, weights=mass, minlength=len(uniq))
            for kk, s in zip(uniq.tolist(), sums.tolist()):
                masses[kk] = masses.get(kk, 0.0) + s
        else:
            uniq, inv = np.unique(labels, axis=0, return_inverse=True)
            sums = np.bincount(inv.ravel(), weights=mass, minlength=len(uniq))
            for row, s in zip(uniq.tolist(), sums.tolist()):
                kk = tuple(row)
                masses[kk] = masses.get(kk, 0.0) + s

    items = sorted(masses.items())
    H = -math.fsum(v * math.log(v) for _, v in items if v > 0.0)
    count = sum(1 for _, v in items if v > 0.0)
    return H, count
