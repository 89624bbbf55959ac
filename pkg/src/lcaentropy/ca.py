"""Finite words, the block map of a rule, preimages and itineraries.

A :class:`Word` is a block of symbols with an explicit start coordinate; it
doubles as the description of the cylinder set of all bi-infinite
configurations agreeing with it on its window.  Explicit coordinates keep
preimage geometry exact: the preimage window of a cylinder on [a, b] is
[a - l, b + r].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import DEFAULT_CAP, WordTooShortError, check_cap
from .partition import PartitionSpec
from .rule import LocalRule

_BLOCK = 1 << 18  # rows per enumeration block


@dataclass(frozen=True)
class Word:
    """Symbols on the coordinate window [start, start + len - 1]."""

    start: int
    symbols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        if any(s < 0 for s in self.symbols):
            raise ValueError("symbols must be nonnegative residues")

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def end(self) -> int:
        """Coordinate of the last symbol."""
        return self.start + len(self.symbols) - 1

    @property
    def window(self) -> tuple[int, int]:
        return (self.start, self.end)

    def symbol_at(self, coord: int) -> int:
        if not self.start <= coord <= self.end:
            raise IndexError(f"coordinate {coord} outside window {self.window}")
        return self.symbols[coord - self.start]

    def slice(self, lo: int, hi: int) -> tuple[int, ...]:
        """Symbols on coordinates lo..hi (inclusive)."""
        if lo < self.start or hi > self.end:
            raise IndexError(f"[{lo},{hi}] outside window {self.window}")
        return self.symbols[lo - self.start : hi - self.start + 1]


def _check_symbols(w: Word, m: int) -> None:
    if any(s >= m for s in w.symbols):
        raise ValueError(f"word has symbols outside Z_{m}: {w.symbols}")


@dataclass(frozen=True)
class SpaceTime:
    """Finite space-time diagram; row k is the k-th image of row 0.

    Rows shrink by l cells on the left and r on the right per step.
    """

    rows: tuple[Word, ...]

    @property
    def steps(self) -> int:
        return len(self.rows) - 1


def apply(rule: LocalRule, w: Word) -> Word:
    """One synchronous update of a finite word.

    The output lives on [start + l, end - r]; the symbol at coordinate n is
    sum_i lambda_i * w[n + i] mod m.
    """
    _check_symbols(w, rule.m)
    span = rule.span
    if len(w) < span + 1:
        raise WordTooShortError(
            f"word of length {len(w)} is too short for neighbourhood width {span + 1}"
        )
    c, m, s = rule.coeffs, rule.m, w.symbols
    out = tuple(
        sum(c[t] * s[j + t] for t in range(span + 1)) % m
        for j in range(len(s) - span)
    )
    return Word(w.start + rule.l, out)


def space_time(rule: LocalRule, w: Word, steps: int) -> SpaceTime:
    """Diagram of ``steps`` updates; requires len(w) >= steps*(l+r) + 1."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if len(w) < steps * rule.span + 1:
        raise WordTooShortError(
            f"word of length {len(w)} supports at most "
            f"{(len(w) - 1) // rule.span if rule.span else steps} steps"
        )
    rows = [w]
    for _ in range(steps):
        rows.append(apply(rule, rows[-1]))
    return SpaceTime(tuple(rows))


def _digit_matrix(m: int, width: int, lo: int, hi: int) -> np.ndarray:
    """Base-m digit rows (most significant first) of the integers lo..hi-1."""
    vals = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((hi - lo, width), dtype=np.int32)
    for j in range(width - 1, -1, -1):
        out[:, j] = vals % m
        vals //= m
    return out


def _apply_matrix(rule: LocalRule, D: np.ndarray) -> np.ndarray:
    """Block map applied to every row of a symbol matrix."""
    out_len = D.shape[1] - rule.span
    acc = np.zeros((D.shape[0], out_len), dtype=np.int64)
    for t, cf in enumerate(rule.coeffs):
        if cf:
            acc += cf * D[:, t : t + out_len]
    return acc % rule.m


def preimage_cylinders(
    rule: LocalRule, c: Word, cap: int = DEFAULT_CAP
) -> list[Word]:
    """All words u on [c.start - l, c.end + r] with apply(rule, u) = c.

    The returned cylinders are pairwise disjoint and their union is the
    full preimage of the cylinder of ``c``; for right-permutative rules
    they are built directly (m^(l+r) of them) by choosing the l+r leftmost
    symbols and solving the rest through the inverse of lambda_r,
    otherwise by exhaustive scan of the window.  Results are in
    lexicographic symbol order.
    """
    _check_symbols(c, rule.m)
    if len(c) == 0:
        raise ValueError("cylinder word must be nonempty")
    m, span = rule.m, rule.span
    width = len(c) + span
    start = c.start - rule.l

    if gcd(rule.coeffs[-1], m) == 1:
        inv = pow(rule.coeffs[-1], -1, m)
        out = []
        for prefix in itertools.product(range(m), repeat=span):
            u = list(prefix)
            for k, target in enumerate(c.symbols):
                partial = sum(rule.coeffs[t] * u[k + t] for t in range(span))
                u.append((inv * (target - partial)) % m)
            out.append(Word(start, tuple(u)))
        return out

    total = m**width
    check_cap(total, cap)
    target = np.asarray(c.symbols, dtype=np.int64)
    out = []
    for lo in range(0, total, _BLOCK):
        D = _digit_matrix(m, width, lo, min(lo + _BLOCK, total))
        mask = np.all(_apply_matrix(rule, D) == target, axis=1)
        for row in D[mask]:
            out.append(Word(start, tuple(int(x) for x in row)))
    return out


def itinerary(
    rule: LocalRule, w: Word, base: PartitionSpec, steps: int
):
    """Sequence of base-partition atoms visited by w over ``steps`` updates.

    Entry k is the atom containing the k-th image of w, read off row k of
    the space-time diagram: the single symbol at coordinate 0 for the
    zero-time base, the window word for a window base.  Rows 0..steps-1
    must all cover the base window.
    """
    _check_symbols(w, rule.m)
    if steps < 1:
        raise ValueError("steps must be >= 1")
    lo, hi = base.bounds
    k = steps - 1
    if w.start + k * rule.l > lo or w.end - k * rule.r < hi:
        raise WordTooShortError(
            f"rows 0..{k} of {w.window} do not all cover the base window [{lo},{hi}]"
        )
    labels = []
    row = w
    for step in range(steps):
        if base.kind == "zero-time":
            labels.append(row.symbol_at(0))
        else:
            labels.append(row.slice(lo, hi))
        if step < steps - 1:
            row = apply(rule, row)
    return tuple(labels)
