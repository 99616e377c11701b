"""Numba kernels for in-place state-vector gate application.

Each kernel enumerates the subspace where the fixed qubits (controls
plus target) are removed, re-inserts their bits into the flat index,
and updates the amplitude pair of the target qubit.  Parallel variants
write disjoint indices only, so results are bit-identical to the serial
ones; small states stay on the serial path to avoid thread overhead.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

PARALLEL_MIN_SUBSPACE = 1 << 15

_ONE = np.int64(1)


@njit(cache=True)
def _insert_bits(g, positions):
    i = np.int64(g)
    for k in range(positions.shape[0]):
        p = positions[k]
        low = i & ((_ONE << p) - _ONE)
        i = ((i >> p) << (p + _ONE)) | low
    return i


@njit(cache=True)
def _swap_serial(psi, positions, base, tbit, nsub):
    for g in range(nsub):
        i0 = _insert_bits(g, positions) | base
        i1 = i0 | tbit
        a = psi[i0]
        psi[i0] = psi[i1]
        psi[i1] = a


@njit(parallel=True, cache=True)
def _swap_parallel(psi, positions, base, tbit, nsub):
    for g in prange(nsub):
        i0 = _insert_bits(g, positions) | base
        i1 = i0 | tbit
        a = psi[i0]
        psi[i0] = psi[i1]
        psi[i1] = a


@njit(cache=True)
def _mix_serial(psi, positions, base, tbit, nsub, u00, u01, u10, u11):
    for g in range(nsub):
        i0 = _insert_bits(g, positions) | base
        i1 = i0 | tbit
        a = psi[i0]
        b = psi[i1]
        psi[i0] = u00 * a + u01 * b
        psi[i1] = u10 * a + u11 * b


@njit(parallel=True, cache=True)
def _mix_parallel(psi, positions, base, tbit, nsub, u00, u01, u10, u11):
    for g in prange(nsub):
        i0 = _insert_bits(g, positions) | base
        i1 = i0 | tbit
        a = psi[i0]
        b = psi[i1]
        psi[i0] = u00 * a + u01 * b
        psi[i1] = u10 * a + u11 * b


def pair_swap(psi: np.ndarray, positions: np.ndarray, base: int, tbit: int) -> None:
    nsub = psi.shape[0] >> positions.shape[0]
    if nsub >= PARALLEL_MIN_SUBSPACE:
        _swap_parallel(psi, positions, np.int64(base), np.int64(tbit), nsub)
    else:
        _swap_serial(psi, positions, np.int64(base), np.int64(tbit), nsub)


def pair_mix(
    psi: np.ndarray, positions: np.ndarray, base: int, tbit: int, u: np.ndarray
) -> None:
    nsub = psi.shape[0] >> positions.shape[0]
    u00, u01, u10, u11 = (
        complex(u[0, 0]),
        complex(u[0, 1]),
        complex(u[1, 0]),
        complex(u[1, 1]),
    )
    if nsub >= PARALLEL_MIN_SUBSPACE:
        _mix_parallel(psi, positions, np.int64(base), np.int64(tbit), nsub, u00, u01, u10, u11)
    else:
        _mix_serial(psi, positions, np.int64(base), np.int64(tbit), nsub, u00, u01, u10, u11)


def warm_up() -> None:
    """Trigger JIT compilation of all kernels on a tiny and a large state."""
    for size in (1 << 4, PARALLEL_MIN_SUBSPACE << 1):
        psi = np.zeros(size, dtype=np.complex128)
        psi[0] = 1.0
        pos = np.array([0], dtype=np.int64)
        pair_swap(psi, pos, 0, 1)
        pair_mix(psi, pos, 0, 1, np.eye(2, dtype=np.complex128))
