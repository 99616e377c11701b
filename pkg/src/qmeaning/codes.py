"""Cyclic bit-string codes and the exact token-ordering solver.

The code of width ``n`` has ``2n`` codewords whose pairwise Hamming
distances equal their cyclic index distances, so mapping tokens onto
consecutive codewords preserves a ring of token similarities.  The ring
order itself comes from an exact minimum Hamiltonian cycle over the
token distance graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError

MAX_CYCLE_NODES = 16  # exact dynamic-programming solver bound


def _hamming(a: int, b: int) -> int:
    return (a ^ b).bit_count()


@dataclass(frozen=True)
class CyclicCode:
    """Ordered alphabet of 2n distinct width-n codewords.

    Invariants (checked on construction): codeword 0 is all-zeros,
    d_H(codewords[i], codewords[j]) = min(|i-j|, 2n-|i-j|), and cyclically
    adjacent codewords differ in exactly one bit.
    """

    width: int
    codewords: tuple[int, ...]

    def __post_init__(self):
        n = self.width
        words = self.codewords
        if len(words) != 2 * n:
            raise ValueError(f"expected {2 * n} codewords, got {len(words)}")
        if words[0] != 0:
            raise ValueError("codewords[0] must be all-zeros")
        if len(set(words)) != len(words):
            raise ValueError("codewords must be distinct")
        for i in range(2 * n):
            for j in range(i + 1, 2 * n):
                want = min(j - i, 2 * n - (j - i))
                if _hamming(words[i], words[j]) != want:
                    raise ValueError(
                        f"position-to-distance law broken at ({i}, {j}): "
                        f"d_H={_hamming(words[i], words[j])}, expected {want}"
                    )

    def as_strings(self) -> list[str]:
        return [format(w, f"0{self.width}b") for w in self.codewords]

    def __len__(self) -> int:
        return len(self.codewords)


def generate_cyclic_code(n: int) -> CyclicCode:
    """Build the width-n cyclic code iteratively.

    The first n+1 codewords follow p[i+1] = 2*p[i] + 1 from p[0] = 0; the
    remaining n-1 follow p[i] = p[n] - p[i-n].
    """
    if n < 1:
        raise ValueError("width must be >= 1")
    words = [0]
    for _ in range(n):
        words.append(2 * words[-1] + 1)
    for i in range(n + 1, 2 * n):
        words.append(words[n] - words[i - n])
    return CyclicCode(width=n, codewords=tuple(words))


def min_hamiltonian_cycle(weights) -> list[int]:
    """Exact minimum Hamiltonian cycle over a symmetric distance matrix.

    Returns the visiting order as node indices, normalized so node 0
    (by convention the most frequent token) comes first and its
    cheaper-adjacent neighbour second (smaller index on ties).  Exact
    dynamic programming over subsets; k is limited to MAX_CYCLE_NODES.
    """
    w = np.asarray(weights, dtype=float)
    k = w.shape[0]
    if w.shape != (k, k):
        raise ValueError("weights must be a square matrix")
    if not (3 <= k <= MAX_CYCLE_NODES):
        raise CapacityError(f"cycle solver handles 3..{MAX_CYCLE_NODES} nodes, got {k}")
    if not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite")
    if not np.allclose(w, w.T):
        raise ValueError("weights must be symmetric")

    # Held-Karp with node 0 fixed as the start.  dp[mask, v] = cheapest
    # path over {0} | mask ending at v, where mask indexes nodes 1..k-1.
    m = k - 1
    size = 1 << m
    dp = np.full((size, m), np.inf)
    parent = np.full((size, m), -1, dtype=np.int8)
    for v in range(m):
        dp[1 << v, v] = w[0, v + 1]
    for mask in range(1, size):
        row = dp[mask]
        for v in range(m):
            bit = 1 << v
            if not mask & bit:
                continue
            cost = row[v]
            if not np.isfinite(cost):
                continue
            rest = ~mask & (size - 1)
            u = rest
            while u:
                nv = (u & -u).bit_length() - 1
                cand = cost + w[v + 1, nv + 1]
                if cand < dp[mask | (1 << nv), nv]:
                    dp[mask | (1 << nv), nv] = cand
                    parent[mask | (1 << nv), nv] = v
                u &= u - 1
    full = size - 1
    closing = dp[full] + w[1:, 0]
    end = int(np.argmin(closing))  # first minimum: deterministic tie-break
    order = [end]
    mask = full
    while parent[mask, order[-1]] >= 0:
        prev = parent[mask, order[-1]]
        mask ^= 1 << order[-1]
        order.append(int(prev))
    order = [0] + [v + 1 for v in reversed(order)]

    # Cycle is rotation/reflection invariant; fix the representative.
    nxt, prv = order[1], order[-1]
    if (w[0, prv], prv) < (w[0, nxt], nxt):
        order = [0] + order[:0:-1]
    return order


def cycle_weight(weights, order: list[int]) -> float:
    """Total weight of a closed tour in visiting order."""
    w = np.asarray(weights, dtype=float)
    return float(sum(w[order[i], order[(i + 1) % len(order)]] for i in range(len(order))))


@dataclass(frozen=True)
class BasisSet:
    """Tokens in ring order with their codeword assignment.

    The assignment maps token[i] to codewords[i]; it is injective onto a
    prefix of the code, so ring-adjacent tokens get Hamming-adjacent
    codewords.
    """

    tokens: tuple[str, ...]
    code: CyclicCode
    assignment: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.tokens) > len(self.code):
            raise CapacityError(
                f"{len(self.tokens)} tokens exceed {len(self.code)} codewords"
            )
        if len(set(self.tokens)) != len(self.tokens):
            raise ValueError("basis tokens must be distinct")
        if not self.assignment:
            object.__setattr__(
                self,
                "assignment",
                {t: self.code.codewords[i] for i, t in enumerate(self.tokens)},
            )

    @property
    def width(self) -> int:
        return self.code.width

    def codeword_of(self, token: str) -> int:
        return self.assignment[token]

    def token_of(self, codeword: int) -> str | None:
        for t, c in self.assignment.items():
            if c == codeword:
                return t
        return None

    def bits_of(self, token: str) -> str:
        return format(self.assignment[token], f"0{self.width}b")


def assign_codes(ordering: list[str], code: CyclicCode) -> BasisSet:
    """Map tokens in ring order onto the code's leading codewords."""
    if len(ordering) > len(code):
        raise CapacityError(
            f"cannot assign {len(ordering)} tokens to {len(code)} codewords"
        )
    return BasisSet(tokens=tuple(ordering), code=code)


def basis_for_tokens(ordering: list[str]) -> BasisSet:
    """Build a basis from tokens in ring order, sizing the code to fit.

    Width is ceil(k/2) so the 2*width codewords cover k tokens; for even
    k the tokens occupy the full cycle.
    """
    k = len(ordering)
    if k < 1:
        raise ValueError("need at least one token")
    width = max(1, (k + 1) // 2)
    return assign_codes(ordering, generate_cyclic_code(width))
