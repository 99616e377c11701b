"""Independent oracles for the test suite.

Dense-matrix gate application and exhaustive cycle search, kept free of
any simulator or solver code so the comparisons mean something.
"""

from itertools import permutations

import numpy as np


def controlled_unitary_matrix(num_qubits, controls, target, u) -> np.ndarray:
    """Full 2^q x 2^q matrix of a (multi-)controlled single-qubit gate."""
    dim = 1 << num_qubits
    m = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        if all(((col >> c) & 1) == pol for c, pol in controls):
            bit = (col >> target) & 1
            base = col & ~(1 << target)
            m[base, col] += u[0, bit]
            m[base | (1 << target), col] += u[1, bit]
        else:
            m[col, col] = 1.0
    return m


def random_state(num_qubits, rng) -> np.ndarray:
    vec = rng.standard_normal(1 << num_qubits) + 1j * rng.standard_normal(1 << num_qubits)
    return vec / np.linalg.norm(vec)


def brute_force_min_cycle_weight(weights) -> float:
    """Exhaustive (k-1)!/2 search for the cheapest closed tour."""
    w = np.asarray(weights, dtype=float)
    k = w.shape[0]
    best = np.inf
    for perm in permutations(range(1, k)):
        order = (0,) + perm
        total = sum(w[order[i], order[(i + 1) % k]] for i in range(k))
        best = min(best, total)
    return float(best)
