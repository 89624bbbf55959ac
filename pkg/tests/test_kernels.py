import math

import numpy as np
import pytest

from lcaentropy import (
    CapExceededError,
    LocalRule,
    PartitionSpec,
    available_backends,
    bernoulli,
    default_base,
    join_entropy,
    make_markov,
    uniform_measure,
)
from lcaentropy import _kernels
from lcaentropy._kernels import pure

from _reference import naive_join

HAS_CY = "cython" in available_backends()
needs_cython = pytest.mark.skipif(not HAS_CY, reason="compiled kernel not built")

CASES = [
    (LocalRule(2, 1, 1, (1, 0, 1)), lambda: uniform_measure(2), PartitionSpec.window(-1, 0), 4),
    (LocalRule(2, 1, 1, (1, 0, 1)), lambda: make_markov([[0.9, 0.1], [0.8, 0.2]], (8 / 9, 1 / 9)), PartitionSpec.zero_time(), 4),
    (LocalRule(3, 1, 1, (2, 1, 1)), lambda: make_markov([[0.2, 0.3, 0.5], [0.5, 0.2, 0.3], [0.3, 0.5, 0.2]]), PartitionSpec.window(0, 1), 3),
    (LocalRule(4, 1, 0, (2, 1)), lambda: uniform_measure(4), PartitionSpec.window(-1, 1), 3),
    (LocalRule(2, 0, 2, (1, 1, 1)), lambda: bernoulli((0.25, 0.75)), PartitionSpec.zero_time(), 3),
]


def call(impl, rule, mu, base, n):
    lo, hi = base.bounds
    return _kernels.join_stats(
        rule.m, rule.l, rule.r, rule.coeffs, lo, hi, n,
        mu.pi, mu.P.entries, cap=1 << 24, impl=impl,
    )


class TestPureKernel:
    @pytest.mark.parametrize("case", CASES)
    def test_matches_naive(self, case):
        rule, mu_factory, base, n_max = case
        mu = mu_factory()
        for n in range(1, n_max + 1):
            h, count = call("pure", rule, mu, base, n)
            h_ref, count_ref, _ = naive_join(rule, mu, base, n)
            assert count == count_ref
            assert h == pytest.approx(h_ref, abs=1e-12)

    def test_blocks_do_not_change_result(self):
        rule = LocalRule(2, 1, 1, (1, 0, 1))
        mu = make_markov([[0.9, 0.1], [0.8, 0.2]], (8 / 9, 1 / 9))
        full = pure.join_stats(2, 1, 1, rule.coeffs, -1, 0, 4, mu.pi, mu.P.entries, 2**8)
        small = pure.join_stats(2, 1, 1, rule.coeffs, -1, 0, 4, mu.pi, mu.P.entries, 2**8, block=7)
        assert full[1] == small[1]
        assert full[0] == pytest.approx(small[0], abs=1e-13)

    def test_wide_key_tuple_path(self):
        # identity rule, 16-wide base window, 5 steps: key space 2^80 forces
        # the tuple-key path; itineraries repeat the word so the join is the
        # full cylinder partition of the window
        rule = LocalRule(2, 0, 0, (1,))
        mu = uniform_measure(2)
        base = PartitionSpec.window(0, 15)
        h, count = call("pure", rule, mu, base, 5)
        assert count == 2**16
        assert h == pytest.approx(16 * math.log(2), rel=1e-12)


@needs_cython
class TestCompiledKernel:
    @pytest.mark.parametrize("case", CASES)
    def test_matches_pure(self, case):
        rule, mu_factory, base, n_max = case
        mu = mu_factory()
        for n in range(1, n_max + 1):
            h_cy, count_cy = call("cython", rule, mu, base, n)
            h_py, count_py = call("pure", rule, mu, base, n)
            assert count_cy == count_py
            assert h_cy == pytest.approx(h_py, abs=1e-12)

    def test_deterministic(self):
        rule = LocalRule(3, 1, 1, (1, 2, 2))
        mu = make_markov([[0.2, 0.3, 0.5], [0.5, 0.2, 0.3], [0.3, 0.5, 0.2]])
        a = call("cython", rule, mu, PartitionSpec.window(-1, 0), 4)
        b = call("cython", rule, mu, PartitionSpec.window(-1, 0), 4)
        assert a == b

    def test_wide_key_rejected_when_forced(self):
        rule = LocalRule(2, 0, 0, (1,))
        mu = uniform_measure(2)
        with pytest.raises(RuntimeError, match="63-bit"):
            call("cython", rule, mu, PartitionSpec.window(0, 15), 5)

    def test_auto_falls_back_for_wide_keys(self):
        rule = LocalRule(2, 0, 0, (1,))
        mu = uniform_measure(2)
        h, count = call(None, rule, mu, PartitionSpec.window(0, 13), 5)
        assert count == 2**14


class TestDispatcher:
    def test_cap_enforced_exactly(self):
        rule = LocalRule(2, 1, 1, (1, 0, 1))
        mu = uniform_measure(2)
        base = PartitionSpec.window(-1, 0)
        # depth 3 needs 2^6 = 64 words
        assert join_entropy(rule, mu, base, 3, cap=64)[1] == 64
        with pytest.raises(CapExceededError):
            join_entropy(rule, mu, base, 3, cap=63)

    def test_unknown_backend(self):
        rule = LocalRule(2, 1, 1, (1, 0, 1))
        mu = uniform_measure(2)
        with pytest.raises(ValueError, match="backend"):
            call("fortran", rule, mu, PartitionSpec.zero_time(), 2)

    def test_env_override(self, monkeypatch, rule90, uniform2):
        monkeypatch.setenv("LCA_ENTROPY_KERNEL", "pure")
        assert _kernels.active_backend() == "pure"
        h, count = join_entropy(rule90, uniform2, default_base(rule90), 3)
        assert count == 64

    def test_invalid_steps(self, rule90, uniform2):
        with pytest.raises(ValueError):
            call("pure", rule90, uniform2, PartitionSpec.zero_time(), 0)

    def test_zero_measure_classes_excluded(self, rule90):
        mu = bernoulli((1.0, 0.0))
        h, count = call("pure", rule90, mu, PartitionSpec.zero_time(), 3)
        assert (h, count) == (0.0, 1)
        if HAS_CY:
            assert call("cython", rule90, mu, PartitionSpec.zero_time(), 3) == (0.0, 1)


class TestDigitMatrix:
    def test_digits_roundtrip(self):
        D = pure.digit_matrix(3, 4, 0, 81)
        assert D.shape == (81, 4)
        # lexicographic rows == numeric order
        vals = [int("".join(map(str, row)), 3) for row in D.tolist()]
        assert vals == list(range(81))

    def test_windowed_block(self):
        D = pure.digit_matrix(2, 5, 10, 14)
        assert D.tolist() == [
            [0, 1, 0, 1, 0],
            [0, 1, 0, 1, 1],
            [0, 1, 1, 0, 0],
            [0, 1, 1, 0, 1],
        ]
