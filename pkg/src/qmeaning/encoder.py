"""Iterative carve-off encoding of bit patterns into an equal superposition.

Patterns are loaded one at a time: the active branch (control register
u = |01>) is marked by comparing memory against the auxiliary register,
a controlled carve rotation splits off amplitude 1/sqrt(N) for the new
pattern, and the marking is uncomputed.  After N iterations the memory
register holds 1/sqrt(N) on every pattern with a and u reset to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CapacityError, QMeaningError
from .simulator import GateCounter, RegisterLayout, StateVector, X_MATRIX

ENCODE_TOLERANCE = 1e-10
CHECKPOINT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PatternSet:
    """Ordered distinct bit patterns of a common width."""

    width: int
    patterns: tuple[int, ...]

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("width must be >= 1")
        if not self.patterns:
            raise ValueError("need at least one pattern")
        for p in self.patterns:
            if not 0 <= p < 1 << self.width:
                raise ValueError(f"pattern {p} does not fit in {self.width} bits")
        if len(set(self.patterns)) != len(self.patterns):
            raise QMeaningError("patterns must be distinct")

    @classmethod
    def from_strings(cls, strings) -> "PatternSet":
        strings = list(strings)
        if not strings:
            raise ValueError("need at least one pattern")
        width = len(strings[0])
        for s in strings:
            if len(s) != width or set(s) - {"0", "1"}:
                raise ValueError(f"bad pattern string {s!r}")
        return cls(width=width, patterns=tuple(int(s, 2) for s in strings))

    def strings(self) -> list[str]:
        return [format(p, f"0{self.width}b") for p in self.patterns]

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)


def load_pattern_file(path: str | Path) -> tuple[PatternSet, dict[int, str]]:
    """Read 'bits [label]' lines; blank lines and #-comments are skipped."""
    strings: list[str] = []
    labels: dict[int, str] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split(maxsplit=1)
        bits = fields[0]
        if set(bits) - {"0", "1"}:
            raise QMeaningError(f"{path}: line {lineno}: bad pattern {bits!r}")
        strings.append(bits)
        if len(fields) == 2:
            labels[int(bits, 2)] = fields[1].strip()
    if not strings:
        raise QMeaningError(f"{path}: no patterns found")
    patterns = PatternSet.from_strings(strings)
    return patterns, labels


def save_pattern_file(
    path: str | Path, patterns: PatternSet, labels: dict[int, str] | None = None
) -> None:
    lines = []
    for p, bits in zip(patterns, patterns.strings()):
        label = (labels or {}).get(p)
        lines.append(f"{bits} {label}" if label else bits)
    Path(path).write_text("\n".join(lines) + "\n")


def carve_angle(i: int) -> float:
    return -math.acos((i - 2) / i)


def carve_matrix(i: int) -> np.ndarray:
    """Rotation that splits amplitude 1/sqrt(i) off the active branch."""
    if i < 1:
        raise ValueError("carve index must be >= 1")
    d = math.sqrt((i - 1) / i)
    o = 1.0 / math.sqrt(i)
    return np.array([[d, o], [-o, d]], dtype=np.complex128)


@dataclass
class EncodedMemory:
    """Result of encoding: state over (m, u, a), patterns, gate tally."""

    state: StateVector
    pattern_set: PatternSet
    gate_report: GateCounter

    @property
    def width(self) -> int:
        return self.pattern_set.width

    def memory_probabilities(self) -> np.ndarray:
        return self.state.register_probabilities("m")

    def validate(self, tolerance: float = ENCODE_TOLERANCE) -> None:
        """Assert the equal-superposition contract on the final state."""
        layout = self.state.layout
        amps = self.state.amplitudes
        expected = 1.0 / math.sqrt(len(self.pattern_set))
        stored_idx = np.array(
            [layout.index_of({"m": p}) for p in self.pattern_set], dtype=np.intp
        )
        stray = np.abs(amps)
        for idx, p in zip(stored_idx, self.pattern_set):
            if abs(amps[idx] - expected) > tolerance:
                raise QMeaningError(
                    f"pattern {p:0{self.width}b} amplitude {amps[idx]} != {expected:.12f}"
                )
            stray[idx] = 0.0
        worst = float(stray.max())
        if worst > tolerance:
            raise QMeaningError(f"residual amplitude {worst:.3e} outside stored patterns")


def encode(pattern_set: PatternSet) -> EncodedMemory:
    """Encode N distinct n-bit patterns as an equal superposition on m."""
    n = pattern_set.width
    count = len(pattern_set)
    if count > 1 << n:
        raise CapacityError(f"{count} patterns exceed 2^{n} basis states")

    layout = RegisterLayout.encoding(n)
    state = StateVector(layout)
    u1, u2 = layout.qubit("u", 0), layout.qubit("u", 1)
    m = list(layout.qubits("m"))
    a = list(layout.qubits("a"))
    m_controls = [(q, 1) for q in m]

    state.apply_x(u2)  # control register starts as |01>
    for i, pattern in enumerate(pattern_set, start=1):
        set_bits = [j for j in range(n) if (pattern >> j) & 1]
        for j in set_bits:
            state.apply_x(a[j])
        for j in range(n):
            state.apply_ccx(a[j], u2, m[j])
        for j in range(n):
            state.apply_cx(a[j], m[j])
            state.apply_x(m[j])
        state.apply_controlled_u(m_controls, u1, X_MATRIX)
        state.apply_controlled_u([(u1, 1)], u2, carve_matrix(count + 1 - i))
        state.apply_controlled_u(m_controls, u1, X_MATRIX)
        for j in reversed(range(n)):
            state.apply_x(m[j])
            state.apply_cx(a[j], m[j])
        for j in reversed(range(n)):
            state.apply_ccx(a[j], u2, m[j])
        for j in set_bits:
            state.apply_x(a[j])
        _checkpoint(state, pattern_set, i)

    memory = EncodedMemory(
        state=state, pattern_set=pattern_set, gate_report=state.counter.snapshot()
    )
    return memory


def _checkpoint(state: StateVector, pattern_set: PatternSet, done: int) -> None:
    # Guards against off-by-one drift in the carve exponent order: after
    # iteration i every stored pattern holds 1/sqrt(N) and the active
    # branch (u = |01>, value 2) holds the remainder.
    count = len(pattern_set)
    stored = 1.0 / math.sqrt(count)
    for pattern in pattern_set.patterns[:done]:
        amp = state.amplitude({"m": pattern})
        if abs(amp - stored) > CHECKPOINT_TOLERANCE:
            raise QMeaningError(
                f"checkpoint after pattern {done}: stored amplitude {amp} != {stored:.12f}"
            )
    active = state.amplitude({"u": 2})
    expected_active = math.sqrt((count - done) / count)
    if abs(active - expected_active) > CHECKPOINT_TOLERANCE:
        raise QMeaningError(
            f"checkpoint after pattern {done}: active amplitude {active} != {expected_active:.12f}"
        )
