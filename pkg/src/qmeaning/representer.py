"""Weight an encoded memory by Hamming distance to a test pattern.

The test pattern is loaded into the auxiliary register, a pair of
two-controlled Ry(pi/n) rotations per qubit position turns bit matches
into rotation of the first control qubit, and post-selecting that qubit
leaves each stored pattern p with amplitude proportional to
cos(d_H(p, x) * pi / (2n)).  A pure-math oracle for the same weights
lives alongside for cross-checking and analytic work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .encoder import EncodedMemory, PatternSet
from .errors import QMeaningError, ZeroNormError
from .simulator import StateVector, ry_matrix

DISTRIBUTION_TOLERANCE = 1e-10


def parse_pattern(spec: int | str, width: int) -> int:
    """Accept an int or a fixed-width bit-string."""
    if isinstance(spec, str):
        if len(spec) != width or set(spec) - {"0", "1"}:
            raise QMeaningError(f"test pattern {spec!r} is not a {width}-bit string")
        return int(spec, 2)
    if not 0 <= spec < 1 << width:
        raise QMeaningError(f"test pattern {spec} does not fit in {width} bits")
    return spec


def hamming_distance(a: int, b: int) -> int:
    return (a ^ b).bit_count()


# -- classical oracle ----------------------------------------------------


def distance_weights(patterns, x: int, width: int) -> np.ndarray:
    """cos(d_H(p, x) * pi / (2 * width)) for every stored pattern."""
    return np.array(
        [math.cos(hamming_distance(p, x) * math.pi / (2 * width)) for p in patterns]
    )


def oracle_distribution(patterns, x: int, width: int) -> tuple[np.ndarray, float]:
    """Post-selection distribution and success probability, classically.

    Probabilities are w^2 / Z with Z = sum of squared weights; the
    success probability is Z / N.
    """
    weights = distance_weights(patterns, x, width)
    z = float(np.sum(weights**2))
    # same cutoff as the simulator's post-selection: <P> = Z/N
    if z / len(weights) < 1e-12:
        raise ZeroNormError("test pattern is orthogonal to every stored pattern")
    return weights**2 / z, z / len(weights)


# -- quantum pipeline ----------------------------------------------------


@dataclass
class WeightedDistribution:
    """Per-pattern post-selection probabilities for one test pattern."""

    width: int
    test_pattern: int
    patterns: tuple[int, ...]
    probabilities: np.ndarray
    success_probability: float
    counts: np.ndarray | None = None
    shots: int | None = None
    seed: int | None = None

    def __post_init__(self):
        total = float(np.sum(self.probabilities))
        if abs(total - 1.0) > DISTRIBUTION_TOLERANCE:
            raise QMeaningError(f"probabilities sum to {total}, not 1")

    @property
    def distances(self) -> list[int]:
        return [hamming_distance(p, self.test_pattern) for p in self.patterns]

    def pattern_strings(self) -> list[str]:
        return [format(p, f"0{self.width}b") for p in self.patterns]

    def csv_rows(self, labels: dict[int, str] | None = None) -> list[tuple]:
        """(label, pattern, distance, probability, count) rows.

        Ranked by probability (descending), then pattern string; count
        is None when the distribution was not sampled.
        """
        labels = labels or {}
        counts = (
            self.counts if self.counts is not None else [None] * len(self.patterns)
        )
        rows = [
            (labels.get(value, ""), bits, distance, float(probability), count)
            for bits, value, distance, probability, count in zip(
                self.pattern_strings(),
                self.patterns,
                self.distances,
                self.probabilities,
                counts,
            )
        ]
        rows.sort(key=lambda r: (-r[3], r[1]))
        return rows


def load_test_pattern(memory: EncodedMemory, x: int | str) -> StateVector:
    """Write the test pattern into register a (X per set bit); m untouched."""
    state = memory.state
    n = memory.width
    x = parse_pattern(x, n)
    a = list(state.layout.qubits("a"))
    for j in range(n):
        if (x >> j) & 1:
            state.apply_x(a[j])
    return state


def apply_distance_rotations(state: StateVector, n: int) -> StateVector:
    """Rotate u1 by pi/n once per position where a and m agree.

    Each position fires a two-controlled Ry for (a_j=1, m_j=1) and,
    after flipping both qubits, for (a_j=0, m_j=0); the flips are
    undone immediately, restoring a and m bitwise.
    """
    layout = state.layout
    if layout.width("m") != n:
        raise QMeaningError(f"state memory width {layout.width('m')} != {n}")
    theta = math.pi / n
    rotation = ry_matrix(theta)
    u1 = layout.qubit("u", 0)
    for j in range(n):
        aj, mj = layout.qubit("a", j), layout.qubit("m", j)
        state.apply_controlled_u([(aj, 1), (mj, 1)], u1, rotation)
        state.apply_x(aj)
        state.apply_x(mj)
        state.apply_controlled_u([(aj, 1), (mj, 1)], u1, rotation)
        state.apply_x(aj)
        state.apply_x(mj)
    return state


def reset_register_to_zero(state: StateVector, register: str) -> int:
    """Undo the basis value of a register by reapplying X per set bit."""
    probs = state.register_probabilities(register)
    value = int(np.argmax(probs))
    if abs(probs[value] - 1.0) > 1e-9:
        raise QMeaningError(
            f"register {register!r} is not in a basis state (mass {probs[value]:.6f})"
        )
    for j in range(state.layout.width(register)):
        if (value >> j) & 1:
            state.apply_x(state.layout.qubit(register, j))
    return value


def project_and_normalize(
    state: StateVector, patterns: PatternSet
) -> WeightedDistribution:
    """Post-select u1 = 1, reset register a, read off the m distribution."""
    u1 = state.layout.qubit("u", 0)
    success = state.post_select(u1, 1)
    test_pattern = reset_register_to_zero(state, "a")
    marginal = state.register_probabilities("m")
    probabilities = np.array([marginal[p] for p in patterns])
    residual = float(marginal.sum() - probabilities.sum())
    if residual > DISTRIBUTION_TOLERANCE:
        raise QMeaningError(f"probability mass {residual:.3e} outside stored patterns")
    return WeightedDistribution(
        width=patterns.width,
        test_pattern=test_pattern,
        patterns=patterns.patterns,
        probabilities=probabilities / probabilities.sum(),
        success_probability=success,
    )


def represent(
    memory: EncodedMemory,
    x: int | str,
    shots: int | None = None,
    seed: int | None = None,
) -> WeightedDistribution:
    """Full pipeline on a copy of the memory: load, rotate, post-select.

    With `shots`, the post-selected memory register is sampled and the
    counts attached; every sampled bit-string must be a stored pattern.
    """
    working = EncodedMemory(
        state=_copy_state(memory.state),
        pattern_set=memory.pattern_set,
        gate_report=memory.gate_report,
    )
    state = load_test_pattern(working, x)
    apply_distance_rotations(state, memory.width)
    distribution = project_and_normalize(state, memory.pattern_set)
    if shots is not None:
        histogram = state.sample_register("m", shots, seed)
        stored = set(working.pattern_set.strings())
        stray = set(histogram) - stored
        if stray:
            raise QMeaningError(f"sampled patterns outside the stored set: {sorted(stray)}")
        counts = np.array(
            [histogram.get(bits, 0) for bits in working.pattern_set.strings()]
        )
        distribution.counts = counts
        distribution.shots = shots
        distribution.seed = seed
    return distribution


def _copy_state(state: StateVector) -> StateVector:
    clone = StateVector(state.layout, state.counter.snapshot())
    clone.amplitudes = state.amplitudes.copy()
    return clone
