"""Join entropies, closed-form entropy, invariance check, generator probe.

The brute-force route computes H(join of the first n pullbacks of a base
partition) exactly, by enumerating every word of the dependency window,
grouping words by itinerary and summing cylinder measures per class.  The
closed-form route multiplies the chain's entropy rate by l + r, which is
the exact value for bipermutative rules; comparing the two is the point of
the package.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import gcd

from . import _kernels
from .ca import Word, preimage_cylinders
from .errors import DEFAULT_CAP, CapExceededError, NotBipermutativeError
from .measure import (
    MarkovMeasure,
    convert_log_base,
    cylinder_measure,
    markov_entropy_rate,
    uniform_measure,
)
from .partition import PartitionSpec
from .rule import LocalRule, PermutativityClass, classify


def partition_entropy(mu: MarkovMeasure, atoms, log_base: str = "nats") -> float:
    """Entropy -sum mu(A) log mu(A) of a finite partition.

    ``atoms`` is a list of measurable sets, each given as a union of Words
    (a lone Word is accepted per atom).  Atom measures must sum to 1 within
    1e-9.
    """
    sets = [[a] if isinstance(a, Word) else list(a) for a in atoms]
    weights = [
        math.fsum(cylinder_measure(mu, w) for w in words) for words in sets
    ]
    total = math.fsum(weights)
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"atom measures sum to {total!r}, not 1")
    h = -math.fsum(p * math.log(p) for p in weights if p > 0.0)
    return convert_log_base(h, log_base, mu.m)


def partition_atoms(spec: PartitionSpec, m: int) -> list[list[Word]]:
    """The atoms of a base partition as single-cylinder unions."""
    lo, hi = spec.bounds
    return [
        [Word(lo, symbols)]
        for symbols in itertools.product(range(m), repeat=hi - lo + 1)
    ]


def join_entropy(
    rule: LocalRule,
    mu: MarkovMeasure,
    base: PartitionSpec,
    n: int,
    cap: int = DEFAULT_CAP,
    log_base: str = "nats",
    impl: str | None = None,
) -> tuple[float, int]:
    """Exact entropy and class count of the n-fold itinerary join.

    Enumerates all words on the dependency window (base window widened by
    (n-1)l left and (n-1)r right), groups them by itinerary and sums
    cylinder measure within each group; classes of measure zero are
    excluded from both the entropy sum and the count.
    """
    if mu.m != rule.m:
        raise ValueError(f"measure is on Z_{mu.m} but rule is over Z_{rule.m}")
    lo, hi = base.bounds
    h, count = _kernels.join_stats(
        rule.m, rule.l, rule.r, rule.coeffs, lo, hi, n,
        mu.pi, mu.P.entries, cap, impl=impl,
    )
    return convert_log_base(h, log_base, rule.m), count


@dataclass(frozen=True)
class EntropySequence:
    """Join entropies H[n] for n = 1..n_max with rate estimators.

    Arrays are indexed by i = n - 1.  ``diffs[i]`` is H[n] - H[n-1] (NaN at
    i = 0), ``ratios[i]`` is H[n]/n, ``atom_counts[i]`` the number of
    positive-measure itinerary classes.  ``complete`` is False when the
    enumeration cap cut the sequence short of n_max.
    """

    n_max: int
    H: tuple
    diffs: tuple
    ratios: tuple
    atom_counts: tuple
    complete: bool
    log_base: str = "nats"

    @property
    def final_diff(self) -> float:
        return self.diffs[-1] if len(self.diffs) > 1 else math.nan

    def as_dict(self) -> dict:
        return {
            "H": list(self.H),
            "diffs": [None if math.isnan(d) else d for d in self.diffs],
            "ratios": list(self.ratios),
            "atom_counts": list(self.atom_counts),
        }


def entropy_sequence(
    rule: LocalRule,
    mu: MarkovMeasure,
    base: PartitionSpec,
    n_max: int,
    cap: int = DEFAULT_CAP,
    log_base: str = "nats",
    impl: str | None = None,
) -> EntropySequence:
    """Join entropies for n = 1..n_max; truncates (flagged) at the cap.

    Raises CapExceededError only if even n = 1 is infeasible.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    H: list[float] = []
    counts: list[int] = []
    for n in range(1, n_max + 1):
        try:
            h, c = join_entropy(rule, mu, base, n, cap=cap, log_base=log_base, impl=impl)
        except CapExceededError:
            if not H:
                raise
            break
        H.append(h)
        counts.append(c)
    diffs = [math.nan] + [H[i] - H[i - 1] for i in range(1, len(H))]
    ratios = [h / (i + 1) for i, h in enumerate(H)]
    return EntropySequence(
        n_max=n_max,
        H=tuple(H),
        diffs=tuple(diffs),
        ratios=tuple(ratios),
        atom_counts=tuple(counts),
        complete=len(H) == n_max,
        log_base=log_base,
    )


def _require_bipermutative(rule: LocalRule) -> None:
    cls = classify(rule)
    if cls is PermutativityClass.BIPERMUTATIVE:
        return
    bad = []
    if gcd(rule.coeffs[0], rule.m) != 1:
        bad.append(
            f"left end: gcd(lambda_{-rule.l} = {rule.coeffs[0]}, {rule.m}) = "
            f"{gcd(rule.coeffs[0], rule.m)}"
        )
    if gcd(rule.coeffs[-1], rule.m) != 1:
        bad.append(
            f"right end: gcd(lambda_{rule.r} = {rule.coeffs[-1]}, {rule.m}) = "
            f"{gcd(rule.coeffs[-1], rule.m)}"
        )
    raise NotBipermutativeError(
        "rule is not bipermutative (" + "; ".join(bad) + ")"
    )


def closed_form_entropy(
    rule: LocalRule, mu: MarkovMeasure, log_base: str = "nats"
) -> float:
    """(l + r) times the chain's entropy rate; requires bipermutativity."""
    _require_bipermutative(rule)
    return rule.span * markov_entropy_rate(mu, log_base)


def uniform_closed_form(rule: LocalRule, log_base: str = "nats") -> float:
    """(l + r) log m, the closed form under any uniform Markov measure."""
    _require_bipermutative(rule)
    return convert_log_base(rule.span * math.log(rule.m), log_base, rule.m)


@dataclass(frozen=True)
class InvarianceReport:
    preserved: bool
    max_deviation: float
    tol: float
    max_len: int
    cylinders_checked: int
    worst: Word | None
    stationary: bool

    def describe(self) -> str:
        verdict = "preserved" if self.preserved else "not preserved"
        out = f"{verdict} (max dev {self.max_deviation:.12g} over {self.cylinders_checked} cylinders)"
        if not self.stationary:
            out += " [nonstationary measure: formal values]"
        return out

    def as_dict(self) -> dict:
        return {
            "preserved": self.preserved,
            "max_deviation": self.max_deviation,
            "tol": self.tol,
            "max_len": self.max_len,
            "cylinders_checked": self.cylinders_checked,
            "worst_cylinder": None if self.worst is None else
                {"start": self.worst.start, "symbols": list(self.worst.symbols)},
            "stationary": self.stationary,
        }


def check_invariance(
    rule: LocalRule,
    mu: MarkovMeasure,
    max_len: int,
    tol: float = 1e-10,
    cap: int = DEFAULT_CAP,
) -> InvarianceReport:
    """Compare mu(T^-1 C) with mu(C) over every cylinder up to max_len.

    mu(T^-1 C) is the sum of cylinder measures over the (disjoint) preimage
    cylinders; the verdict is "preserved" iff the largest absolute
    discrepancy stays within tol.
    """
    if mu.m != rule.m:
        raise ValueError(f"measure is on Z_{mu.m} but rule is over Z_{rule.m}")
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    worst_dev = 0.0
    worst: Word | None = None
    checked = 0
    for k in range(1, max_len + 1):
        for symbols in itertools.product(range(rule.m), repeat=k):
            c = Word(0, symbols)
            direct = cylinder_measure(mu, c)
            pulled = math.fsum(
                cylinder_measure(mu, u) for u in preimage_cylinders(rule, c, cap)
            )
            dev = abs(pulled - direct)
            if dev > worst_dev:
                worst_dev = dev
                worst = c
            checked += 1
    return InvarianceReport(
        preserved=worst_dev <= tol,
        max_deviation=worst_dev,
        tol=tol,
        max_len=max_len,
        cylinders_checked=checked,
        worst=worst,
        stationary=mu.stationary,
    )


@dataclass(frozen=True)
class GeneratorReport:
    injective: bool
    depth: int
    base: str
    window: tuple[int, int]
    word_count: int
    class_count: int

    def describe(self) -> str:
        verdict = "injective" if self.injective else "not injective"
        return (
            f"{verdict}: {self.class_count} itinerary classes from "
            f"{self.word_count} words on [{self.window[0]},{self.window[1]}] "
            f"at depth {self.depth}"
        )

    def as_dict(self) -> dict:
        return {
            "injective": self.injective,
            "depth": self.depth,
            "base_partition": self.base,
            "window": list(self.window),
            "word_count": self.word_count,
            "class_count": self.class_count,
        }


def generator_probe(
    rule: LocalRule,
    base: PartitionSpec,
    n: int,
    cap: int = DEFAULT_CAP,
    impl: str | None = None,
) -> GeneratorReport:
    """Is the depth-n itinerary map injective on dependency-window words?

    Counts itinerary classes under the uniform measure (every word has
    positive mass, so every class is seen) and compares with the word
    count m^|W_n|.  Injectivity means the n-fold join separates all
    cylinders of the window, the finite-scale generator property.
    """
    lo, hi = base.bounds
    w_lo = lo - (n - 1) * rule.l
    w_hi = hi + (n - 1) * rule.r
    words = rule.m ** (w_hi - w_lo + 1)
    _, count = join_entropy(
        rule, uniform_measure(rule.m), base, n, cap=cap, impl=impl
    )
    return GeneratorReport(
        injective=count == words,
        depth=n,
        base=base.describe(),
        window=(w_lo, w_hi),
        word_count=words,
        class_count=count,
    )
