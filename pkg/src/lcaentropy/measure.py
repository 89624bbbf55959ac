"""Stochastic matrices, stationary vectors and Markov measures on cylinders.

A pair (pi, P) assigns to the cylinder of a word w the product
pi[w_0] * P[w_0, w_1] * ... * P[w_{k-1}, w_k]; when pi P = pi this is a
shift-invariant measure, so the word's start coordinate never matters.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .ca import Word, _check_symbols
from .errors import StationaryConvergenceError

ROW_SUM_TOL = 1e-12
STATIONARITY_TOL = 1e-9

#: accepted log-base names (CLI spelling first, op-enum aliases after)
_LOG_BASES = {
    "nats": "nats",
    "natural": "nats",
    "bits": "bits",
    "two": "bits",
    "base-m": "base-m",
    "m": "base-m",
}


def convert_log_base(value_nats: float, log_base: str, m: int) -> float:
    """Convert an entropy value from nats to the requested base."""
    base = _LOG_BASES.get(log_base)
    if base is None:
        raise ValueError(f"unknown log base {log_base!r}")
    if base == "nats":
        return value_nats
    if base == "bits":
        return value_nats / math.log(2.0)
    return value_nats / math.log(m)


@dataclass(frozen=True, eq=False)
class StochasticMatrix:
    """m x m matrix with nonnegative entries and unit row sums."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("matrix must be at least 1x1")
        if np.any(arr < 0):
            raise ValueError("matrix entries must be nonnegative")
        rows = arr.sum(axis=1)
        if np.max(np.abs(rows - 1.0)) > ROW_SUM_TOL:
            raise ValueError(f"row sums deviate from 1 by {np.max(np.abs(rows - 1.0)):.3e}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def m(self) -> int:
        return self.entries.shape[0]


def _as_matrix(P) -> StochasticMatrix:
    return P if isinstance(P, StochasticMatrix) else StochasticMatrix(np.asarray(P))


def _as_prob_vector(p, m: int | None = None) -> np.ndarray:
    vec = np.array(p, dtype=float)
    if vec.ndim != 1:
        raise ValueError("probability vector must be one-dimensional")
    if m is not None and vec.shape[0] != m:
        raise ValueError(f"expected length {m}, got {vec.shape[0]}")
    if np.any(vec < 0):
        raise ValueError("probabilities must be nonnegative")
    if abs(float(vec.sum()) - 1.0) > ROW_SUM_TOL:
        raise ValueError(f"probabilities sum to {float(vec.sum())!r}, not 1")
    vec.setflags(write=False)
    return vec


@dataclass(frozen=True, eq=False)
class MarkovMeasure:
    """Markov measure on cylinder sets, given by (P, pi).

    ``stationary`` records whether pi P = pi within 1e-9; measures built
    with an explicitly nonstationary pi are accepted but flagged, and every
    downstream report carries the flag.
    """

    P: StochasticMatrix
    pi: np.ndarray
    stationary: bool

    @property
    def m(self) -> int:
        return self.P.m


def stationary_vector(
    P, tol: float = 1e-12, max_iters: int = 10**6
) -> np.ndarray:
    """Stationary row vector of P by power iteration from the uniform vector.

    Raises :class:`StationaryConvergenceError` if the iteration has not
    reached ||pi P - pi||_inf <= tol after ``max_iters`` steps (periodic or
    badly mixing chain); the caller may supply pi explicitly instead.
    Warns when the stationary vector is not unique (reducible chain).
    """
    mat = _as_matrix(P).entries
    m = mat.shape[0]
    if m - np.linalg.matrix_rank(mat.T - np.eye(m)) > 1:
        warnings.warn(
            "stationary vector is not unique (reducible chain); "
            "returning the power-iteration limit from the uniform vector",
            stacklevel=2,
        )
    pi = np.full(m, 1.0 / m)
    for _ in range(max_iters):
        nxt = pi @ mat
        nxt /= nxt.sum()
        if float(np.max(np.abs(nxt - pi))) <= tol:
            nxt.setflags(write=False)
            return nxt
        pi = nxt
    raise StationaryConvergenceError(
        f"power iteration did not converge within {max_iters} iterations "
        "(periodic or reducible chain?); supply pi explicitly"
    )


def make_markov(P, pi=None) -> MarkovMeasure:
    """Markov measure from P, computing the stationary vector if pi is omitted.

    A supplied pi with ||pi P - pi||_inf > 1e-9 yields a measure flagged
    nonstationary; entropy operations accept it and report formal values.
    """
    mat = _as_matrix(P)
    if pi is None:
        vec = stationary_vector(mat)
        return MarkovMeasure(mat, vec, True)
    vec = _as_prob_vector(pi, mat.m)
    defect = float(np.max(np.abs(vec @ mat.entries - vec)))
    return MarkovMeasure(mat, vec, defect <= STATIONARITY_TOL)


def bernoulli(p) -> MarkovMeasure:
    """Bernoulli measure: the Markov measure whose rows all equal p."""
    vec = _as_prob_vector(p)
    mat = StochasticMatrix(np.tile(vec, (len(vec), 1)))
    return MarkovMeasure(mat, vec, True)


def uniform_measure(m: int) -> MarkovMeasure:
    """Uniform Bernoulli measure on Z_m (every length-k cylinder has m^-k)."""
    return bernoulli(np.full(m, 1.0 / m))


def is_doubly_stochastic(P, tol: float = 1e-9) -> bool:
    """True iff every column of P also sums to 1 within tol.

    Doubly stochastic P make the Markov measure uniform: every
    one-dimensional cylinder then has measure 1/m.
    """
    mat = _as_matrix(P).entries
    return bool(np.max(np.abs(mat.sum(axis=0) - 1.0)) <= tol)


def cylinder_measure(mu: MarkovMeasure, w: Word) -> float:
    """Measure of the cylinder of w: pi[w_0] * prod P[w_j, w_{j+1}].

    Independent of w.start; zero transition probabilities simply give 0.
    """
    if len(w) < 1:
        raise ValueError("cylinder word must be nonempty")
    _check_symbols(w, mu.m)
    s = w.symbols
    out = float(mu.pi[s[0]])
    P = mu.P.entries
    for j in range(len(s) - 1):
        out *= float(P[s[j], s[j + 1]])
    return out


def markov_entropy_rate(mu: MarkovMeasure, log_base: str = "nats") -> float:
    """Per-symbol entropy of the chain: -sum_ij pi_i P_ij log P_ij.

    Uses the 0 log 0 = 0 convention for zero transition probabilities.
    """
    P = mu.P.entries
    row_entropy = [
        -math.fsum(p * math.log(p) for p in row if p > 0.0) for row in P
    ]
    rate = math.fsum(
        float(pi_i) * h for pi_i, h in zip(mu.pi, row_entropy) if pi_i > 0.0
    )
    return convert_log_base(rate, log_base, mu.m)
