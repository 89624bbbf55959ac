"""Acceptance suite: one test per criterion, one printed PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
print (plain `pytest` shows them in the captured-output section).

Criterion 4's doubly-stochastic-grid clause asserts a property that is
mathematically false for every non-uniform member of the grid (see the
failure message of test_criterion_4_doubly_stochastic_grid, which carries
the measured deviations); it is implemented faithfully at its stated
tolerance and is expected to fail.  Its true companion clause (documented
non-invariance of a skewed chain) and all other criteria pass.
"""

import itertools
import math
import random
import time
import warnings

from lcaentropy import (
    LocalRule,
    PartitionSpec,
    PermutativityClass,
    Word,
    apply,
    check_invariance,
    classify,
    closed_form_entropy,
    entropy_sequence,
    generator_probe,
    iterate,
    join_entropy,
    make_markov,
    preimage_cylinders,
    uniform_measure,
)

LN2 = math.log(2.0)
RULE90 = LocalRule(2, 1, 1, (1, 0, 1))
RULE90_M3 = LocalRule(3, 1, 1, (1, 0, 1))
BASE = PartitionSpec.window(-1, 0)


def _report(name):
    """Print the criterion's PASS/FAIL line even when the body raises."""

    class _Ctx:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            print(f"[acceptance] {name}: {'FAIL' if exc_type else 'PASS'}")
            return False

    return _Ctx()


def bipermutative_rules(m, spans):
    for l, r in spans:
        for coeffs in itertools.product(range(m), repeat=l + r + 1):
            rule = LocalRule(m, l, r, coeffs)
            if rule.span != l + r:
                continue  # trimmed duplicate of a narrower span
            if classify(rule) is PermutativityClass.BIPERMUTATIVE:
                yield rule


def test_criterion_1_uniform_closed_form_vs_joins():
    with _report("criterion 1 (uniform measure: closed form = join diffs, n=2..6)"):
        start = time.perf_counter()
        mu = uniform_measure(2)
        cf = closed_form_entropy(RULE90, mu)
        assert abs(cf - 2 * LN2) <= 1e-9
        seq = entropy_sequence(RULE90, mu, BASE, 6)
        assert seq.complete
        for i in range(1, 6):  # diffs at n = 2..6
            assert abs(seq.diffs[i] - 2 * LN2) <= 1e-9
        elapsed = time.perf_counter() - start
        assert elapsed < 10.0, f"took {elapsed:.2f}s"


def test_criterion_2_markov_closed_form_vs_joins():
    with _report("criterion 2 (skewed Markov: closed form = join diffs, n=2..5)"):
        pi = (8 / 9, 1 / 9)
        P = [[0.9, 0.1], [0.8, 0.2]]
        mu = make_markov(P, pi)
        assert mu.stationary
        cf = closed_form_entropy(RULE90, mu)
        # independent four-term evaluation of the rate
        rate = -math.fsum(
            pi[i] * P[i][j] * math.log(P[i][j]) for i in range(2) for j in range(2)
        )
        assert abs(cf - 2 * rate) <= 1e-12
        assert abs(cf - 0.689125824593283) <= 1e-9
        pi_entropy = -math.fsum(p * math.log(p) for p in pi)
        seq = entropy_sequence(RULE90, mu, BASE, 5)
        for i, n in enumerate(range(1, 6)):
            assert abs(seq.H[i] - (pi_entropy + (2 * n - 1) * rate)) <= 1e-9
            if n >= 2:
                assert abs(seq.diffs[i] - cf) <= 1e-9


def test_criterion_3_itinerary_injectivity():
    with _report("criterion 3 (bipermutative joins separate the window, m=2,3)"):
        for m in (2, 3):
            for rule in bipermutative_rules(m, [(1, 1)]):
                for n in range(1, 5):
                    report = generator_probe(rule, BASE, n)
                    assert report.class_count == m ** (2 * n), (rule, n)
                    assert report.injective


def _doubly_stochastic_grid():
    """(label, rule, P) for the 2x2 p-grid and the 3x3 circulant grid."""
    for k in range(1, 10):
        p = k / 10
        yield f"2x2 p={p:.1f}", RULE90, [[p, 1 - p], [1 - p, p]]
    for a10 in range(0, 11):
        for b10 in range(0, 11 - a10):
            a, b = a10 / 10, b10 / 10
            c = round(1 - a - b, 12)
            yield (
                f"3x3 circ({a:.1f},{b:.1f},{c:.1f})",
                RULE90_M3,
                [[a, b, c], [c, a, b], [b, c, a]],
            )


def test_criterion_4_doubly_stochastic_grid():
    with _report("criterion 4a (invariance over the doubly stochastic grid)"):
        failures = []
        for label, rule, P in _doubly_stochastic_grid():
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")  # reducible grid corners warn
                mu = make_markov(P)
            report = check_invariance(rule, mu, 4, tol=1e-10)
            if report.max_deviation > 1e-10:
                failures.append(f"{label}: max_dev={report.max_deviation:.3e}")
        assert not failures, (
            "invariance fails for every non-uniform doubly stochastic P "
            "(the underlying preservation claim only holds for the uniform "
            "Bernoulli measure):\n  " + "\n  ".join(failures)
        )


def test_criterion_4_documented_non_invariance():
    with _report("criterion 4b (skewed chain is measurably non-invariant)"):
        mu = make_markov([[0.9, 0.1], [0.8, 0.2]], (8 / 9, 1 / 9))
        report = check_invariance(RULE90, mu, 4, tol=1e-10)
        assert report.max_deviation > 1e-3
        assert not report.preserved


def test_criterion_5_preimage_counting():
    with _report("criterion 5 (preimage counts, disjointness, exhaustion)"):
        spans = [(0, 1), (1, 0), (1, 1), (0, 2), (2, 0)]
        for m in (2, 3):
            for rule in bipermutative_rules(m, spans):
                for length in (1, 2, 3):
                    seen = set()
                    for symbols in itertools.product(range(m), repeat=length):
                        pre = preimage_cylinders(rule, Word(0, symbols))
                        assert len(pre) == m**rule.span, (rule, symbols)
                        for u in pre:
                            assert u.window == (-rule.l, length - 1 + rule.r)
                            assert u not in seen
                            seen.add(u)
                    assert len(seen) == m ** (length + rule.span), rule


def test_criterion_6_degenerate_measure():
    with _report("criterion 6 (permutation-matrix measure: zero entropy)"):
        for rule, P in (
            (RULE90, [[0.0, 1.0], [1.0, 0.0]]),
            (RULE90_M3, [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]),
        ):
            mu = make_markov(P)
            assert closed_form_entropy(rule, mu) == 0.0
            seq = entropy_sequence(rule, mu, PartitionSpec.window(-rule.l, rule.r - 1), 4)
            for i, n in enumerate(range(1, 5)):
                if n >= 3:
                    assert abs(seq.diffs[i]) <= 1e-9


def test_criterion_7_rule_algebra():
    with _report("criterion 7 (iteration algebra and permutativity closure)"):
        assert iterate(RULE90, 2) == LocalRule(2, 2, 2, (1, 0, 0, 0, 1))
        spans = [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 0)]
        for m in (2, 3, 4):
            for rule in bipermutative_rules(m, spans):
                for n in range(1, 5):
                    assert (
                        classify(iterate(rule, n)) is PermutativityClass.BIPERMUTATIVE
                    ), (rule, n)
        rng = random.Random(1906)
        sq = iterate(RULE90, 2)
        for _ in range(1000):
            length = rng.randint(5, 14)
            w = Word(rng.randint(-5, 5), [rng.randrange(2) for _ in range(length)])
            assert apply(sq, w) == apply(RULE90, apply(RULE90, w))


def test_criterion_8_zero_time_cardinality_bound():
    with _report("criterion 8 (zero-time base: class count and rate ceiling)"):
        mu = uniform_measure(2)
        seq = entropy_sequence(RULE90, mu, PartitionSpec.zero_time(), 6)
        assert seq.complete
        for i, n in enumerate(range(1, 7)):
            assert seq.atom_counts[i] <= 2**n
            assert seq.ratios[i] <= LN2 + 1e-12
