import math

import numpy as np
import pytest

from qmeaning.encoder import PatternSet, encode
from qmeaning.errors import ZeroNormError
from qmeaning.overlap import analytic_overlap, hamming_weighted_state, swap_test_overlap
from qmeaning.representer import distance_weights, oracle_distribution

EXAMPLE_PATTERNS = [
    "01100", "01000", "01110", "01010", "10011", "10111", "10001", "10101",
]


@pytest.fixture(scope="module")
def example_set():
    return PatternSet.from_strings(EXAMPLE_PATTERNS)


class TestAnalyticOverlap:
    def test_identical_patterns_overlap_one(self, example_set):
        result = analytic_overlap(example_set, "00000", "00000")
        assert result.overlap == pytest.approx(1.0)
        assert result.fidelity_sq == pytest.approx(1.0)

    def test_small_example_value(self, example_set):
        result = analytic_overlap(example_set, "00000", "00111")
        # hand enumeration of the 8 pattern distances gives 3.440955/4.0
        assert result.overlap == pytest.approx(3.4409548011779334 / 4.0, abs=1e-12)
        assert result.overlap == pytest.approx(0.8602, abs=5e-4)
        assert result.fidelity_sq == pytest.approx(result.overlap**2, abs=1e-12)

    def test_symmetric(self, example_set):
        ab = analytic_overlap(example_set, "00000", "00111")
        ba = analytic_overlap(example_set, "00111", "00000")
        assert ab.overlap == pytest.approx(ba.overlap, abs=1e-15)

    def test_invariant_under_storage_order(self, example_set):
        reordered = PatternSet.from_strings(list(reversed(EXAMPLE_PATTERNS)))
        a = analytic_overlap(example_set, "00000", "00111").overlap
        b = analytic_overlap(reordered, "00000", "00111").overlap
        assert a == pytest.approx(b, abs=1e-15)

    def test_orthogonal_test_pattern_raises(self):
        patterns = PatternSet.from_strings(["1"])
        with pytest.raises(ZeroNormError):
            analytic_overlap(patterns, "0", "1")

    def test_overlap_one_iff_equal_distance_vectors(self):
        # equal weight vectors: complementary test patterns around a
        # symmetric memory see the same distances
        patterns = PatternSet.from_strings(["00", "11"])
        same = analytic_overlap(patterns, "01", "10")
        assert same.overlap == pytest.approx(1.0)
        different = analytic_overlap(patterns, "00", "01")
        assert different.overlap < 1.0

    def test_overlap_one_implies_equal_weights(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            n = int(rng.integers(2, 6))
            count = int(rng.integers(2, (1 << n) + 1))
            values = tuple(int(v) for v in rng.choice(1 << n, size=count, replace=False))
            patterns = PatternSet(width=n, patterns=values)
            x0 = int(rng.integers(0, 1 << n))
            x1 = int(rng.integers(0, 1 << n))
            w0 = distance_weights(values, x0, n)
            w1 = distance_weights(values, x1, n)
            if np.sum(w0**2) / count < 1e-12 or np.sum(w1**2) / count < 1e-12:
                continue
            result = analytic_overlap(patterns, x0, x1)
            equal_weights = bool(np.allclose(w0, w1, atol=1e-12))
            assert (abs(result.overlap - 1.0) < 1e-12) == equal_weights


class TestHammingWeightedState:
    def test_state_matches_oracle_weights(self, example_set):
        vector = hamming_weighted_state(example_set, "00000")
        probs, _ = oracle_distribution(example_set.patterns, 0, 5)
        dense = np.zeros(1 << 5)
        for p, pr in zip(example_set.patterns, probs):
            dense[p] = pr
        assert np.max(np.abs(np.abs(vector) ** 2 - dense)) < 1e-12


class TestSwapTestOverlap:
    def test_identical_states_give_unit_overlap(self, example_set):
        result = swap_test_overlap(example_set, "00000", "00000", shots=2000, seed=1)
        assert result.overlap == pytest.approx(1.0)
        assert result.fidelity_sq == pytest.approx(1.0)

    def test_orthogonal_states_give_half_probability(self):
        # n = 1 memory {0, 1}: test 0 keeps only |0>, test 1 only |1>
        patterns = PatternSet.from_strings(["0", "1"])
        shots = 40_000
        result = swap_test_overlap(patterns, "0", "1", shots=shots, seed=7)
        p0 = (result.fidelity_sq + 1.0) / 2.0
        sigma = math.sqrt(0.25 / shots)
        assert abs(p0 - 0.5) < 4 * sigma

    def test_small_example_converges(self, example_set):
        analytic = analytic_overlap(example_set, "00000", "00111").overlap
        result = swap_test_overlap(example_set, "00000", "00111", shots=50_000, seed=11)
        assert result.method == "swap-test"
        assert result.shots == 50_000
        assert abs(result.overlap - analytic) < 0.01

    @pytest.mark.parametrize("seed", range(5))
    def test_converges_within_binomial_error(self, seed):
        rng = np.random.default_rng(500 + seed)
        n = int(rng.integers(2, 5))
        count = int(rng.integers(2, (1 << n) + 1))
        values = tuple(int(v) for v in rng.choice(1 << n, size=count, replace=False))
        patterns = PatternSet(width=n, patterns=values)
        x0 = int(rng.integers(0, 1 << n))
        x1 = int(rng.integers(0, 1 << n))
        shots = 100_000
        analytic = analytic_overlap(patterns, x0, x1)
        estimate = swap_test_overlap(patterns, x0, x1, shots=shots, seed=seed)
        p0 = (analytic.fidelity_sq + 1.0) / 2.0
        sigma_p = math.sqrt(max(p0 * (1 - p0), 1e-12) / shots)
        assert abs((estimate.fidelity_sq + 1) / 2 - p0) < 4 * sigma_p

    def test_zero_shots_rejected(self, example_set):
        with pytest.raises(ValueError):
            swap_test_overlap(example_set, "00000", "00111", shots=0)

    def test_orthogonal_test_pattern_raises(self):
        patterns = PatternSet.from_strings(["1"])
        with pytest.raises(ZeroNormError):
            swap_test_overlap(patterns, "0", "1", shots=100, seed=0)

    def test_deterministic_for_seed(self, example_set):
        a = swap_test_overlap(example_set, "00000", "00111", shots=5000, seed=3)
        b = swap_test_overlap(example_set, "00000", "00111", shots=5000, seed=3)
        assert a == b
