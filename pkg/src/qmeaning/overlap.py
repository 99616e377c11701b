"""Similarity of two test patterns mediated by the shared meaning space.

Analytic route: normalized inner product of the two post-selected
weight vectors.  Simulated route: prepare both post-selected states by
running the full encode/rotate/project pipeline per register, then run
an ancilla-controlled SWAP test.  The unsquared normalized product is
reported as ``overlap``; its square is ``fidelity_sq`` (the SWAP test
estimates the square as 2*P(ancilla=0) - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .encoder import PatternSet, encode
from .errors import ZeroNormError
from .representer import (
    apply_distance_rotations,
    distance_weights,
    load_test_pattern,
    parse_pattern,
    reset_register_to_zero,
)
from .simulator import RegisterLayout, StateVector


@dataclass(frozen=True)
class OverlapResult:
    overlap: float
    fidelity_sq: float
    method: str
    shots: int | None = None
    seed: int | None = None


def analytic_overlap(patterns: PatternSet, x0: int | str, x1: int | str) -> OverlapResult:
    """Normalized inner product of the two Hamming weight vectors."""
    n = patterns.width
    a = parse_pattern(x0, n)
    b = parse_pattern(x1, n)
    w0 = distance_weights(patterns, a, n)
    w1 = distance_weights(patterns, b, n)
    z0 = float(np.sum(w0**2))
    z1 = float(np.sum(w1**2))
    count = len(patterns)
    if z0 / count < 1e-12 or z1 / count < 1e-12:
        raise ZeroNormError("a test pattern is orthogonal to every stored pattern")
    overlap = float(np.dot(w0, w1) / math.sqrt(z0 * z1))
    return OverlapResult(overlap=overlap, fidelity_sq=overlap**2, method="analytic")


def hamming_weighted_state(patterns: PatternSet, x: int | str) -> np.ndarray:
    """Post-selected memory-register state for one test pattern.

    Runs the full quantum pipeline (fresh encode, rotations, projection)
    rather than constructing amplitudes directly.
    """
    memory = encode(patterns)
    state = load_test_pattern(memory, x)
    apply_distance_rotations(state, patterns.width)
    u1 = state.layout.qubit("u", 0)
    state.post_select(u1, 1)
    reset_register_to_zero(state, "a")
    return state.register_vector("m", fixed={"a": 0, "u": 1})


def swap_test_overlap(
    patterns: PatternSet,
    x0: int | str,
    x1: int | str,
    shots: int,
    seed: int | None = None,
) -> OverlapResult:
    """Estimate the overlap with an ancilla-controlled register swap.

    P(ancilla = 0) = (1 + overlap^2) / 2, so the sampled estimate is
    overlap = sqrt(max(0, 2 * P(0) - 1)).
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    n = patterns.width
    v0 = hamming_weighted_state(patterns, x0)
    v1 = hamming_weighted_state(patterns, x1)

    layout = RegisterLayout((("m", n), ("mp", n), ("anc", 1)))
    state = StateVector(layout)
    state.amplitudes[: 1 << (2 * n)] = np.kron(v1, v0)
    state.amplitudes[1 << (2 * n) :] = 0.0

    anc = layout.qubit("anc", 0)
    state.apply_h(anc)
    for j in range(n):
        state.apply_cswap(anc, layout.qubit("m", j), layout.qubit("mp", j))
    state.apply_h(anc)

    histogram = state.sample_register("anc", shots, seed)
    p0 = histogram.get("0", 0) / shots
    fidelity_sq = 2.0 * p0 - 1.0
    overlap = math.sqrt(max(0.0, fidelity_sq))
    return OverlapResult(
        overlap=overlap, fidelity_sq=fidelity_sq, method="swap-test", shots=shots, seed=seed
    )
