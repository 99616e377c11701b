"""Deterministic state-vector simulator over named qubit registers.

Everything is little-endian: qubit j carries weight 2**j in the flat
amplitude index, registers are contiguous runs of qubits, and the first
register in a layout occupies the lowest indices.  Gates mutate the
state in place; gate-call accounting follows fixed decomposition rules
documented on GateCounter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import CapacityError, ZeroNormError

NORM_TOLERANCE = 1e-10
POST_SELECT_MIN_PROBABILITY = 1e-12
REGISTER_PURITY_TOLERANCE = 1e-9


def ry_matrix(theta: float) -> np.ndarray:
    """Half-angle convention: Ry(theta)|0> = cos(theta/2)|0> + sin(theta/2)|1>."""
    if not math.isfinite(theta):
        raise ValueError("rotation angle must be finite")
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


X_MATRIX = np.array([[0, 1], [1, 0]], dtype=np.complex128)


@dataclass(frozen=True)
class RegisterLayout:
    """Ordered (name, width) register map; first register is lowest."""

    registers: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.registers]
        if len(set(names)) != len(names):
            raise ValueError("register names must be unique")
        if any(width < 1 for _, width in self.registers):
            raise ValueError("register widths must be >= 1")

    @classmethod
    def encoding(cls, n: int) -> "RegisterLayout":
        """Memory (n) + control (2) + auxiliary (n): 2n + 2 qubits total."""
        layout = cls((("m", n), ("u", 2), ("a", n)))
        assert layout.num_qubits == 2 * n + 2
        return layout

    @property
    def num_qubits(self) -> int:
        return sum(width for _, width in self.registers)

    def width(self, name: str) -> int:
        for reg, w in self.registers:
            if reg == name:
                return w
        raise KeyError(name)

    def offset(self, name: str) -> int:
        off = 0
        for reg, w in self.registers:
            if reg == name:
                return off
            off += w
        raise KeyError(name)

    def qubit(self, name: str, index: int) -> int:
        if not 0 <= index < self.width(name):
            raise IndexError(f"register {name!r} has no qubit {index}")
        return self.offset(name) + index

    def qubits(self, name: str) -> range:
        off = self.offset(name)
        return range(off, off + self.width(name))

    def index_of(self, values: dict[str, int]) -> int:
        """Flat amplitude index of a basis state given per-register values."""
        index = 0
        for name, width in self.registers:
            value = values.get(name, 0)
            if not 0 <= value < 1 << width:
                raise ValueError(f"value {value} exceeds register {name!r} width {width}")
            index |= value << self.offset(name)
        return index


@dataclass
class GateCounter:
    """Gate-call tally under fixed decomposition rules.

    one_qubit counts X and Ry applications (H is applied as Ry then X
    and therefore counts 2).  two_qubit counts elementary controlled-U
    calls after decomposition: 1 for a single control, 5 for two
    controls, 5*(2k-3) for k >= 3 controls (linear-depth construction);
    a controlled swap is CX + CCX + CX = 7.
    """

    one_qubit_calls: int = 0
    two_qubit_calls: int = 0

    def count_single(self) -> None:
        self.one_qubit_calls += 1

    def count_controlled(self, num_controls: int) -> None:
        if num_controls == 1:
            self.two_qubit_calls += 1
        elif num_controls == 2:
            self.two_qubit_calls += 5
        else:
            self.two_qubit_calls += 5 * (2 * num_controls - 3)

    def snapshot(self) -> "GateCounter":
        return GateCounter(self.one_qubit_calls, self.two_qubit_calls)

    def report(self) -> str:
        return (
            f"one_qubit_calls: {self.one_qubit_calls}\n"
            f"two_qubit_calls: {self.two_qubit_calls}"
        )


class StateVector:
    """2**q complex amplitudes over a register layout, norm-preserving.

    A StateVector is owned by one logical thread at a time; internal
    parallelism partitions disjoint index ranges and is bit-identical
    to serial execution.
    """

    def __init__(self, layout: RegisterLayout, counter: GateCounter | None = None):
        self.layout = layout
        self.counter = counter if counter is not None else GateCounter()
        self.amplitudes = np.zeros(1 << layout.num_qubits, dtype=np.complex128)
        self.amplitudes[0] = 1.0

    @property
    def num_qubits(self) -> int:
        return self.layout.num_qubits

    def _check_qubit(self, qubit: int) -> None:
        if not 0 <= qubit < self.num_qubits:
            raise IndexError(f"qubit {qubit} out of range for {self.num_qubits} qubits")

    def _fixed(self, controls, target: int) -> tuple[np.ndarray, int]:
        self._check_qubit(target)
        seen = {target}
        base = 0
        positions = [target]
        for qubit, polarity in controls:
            self._check_qubit(qubit)
            if qubit in seen:
                raise ValueError(f"overlapping qubit index {qubit}")
            if polarity not in (0, 1):
                raise ValueError(f"control polarity must be 0 or 1, got {polarity}")
            seen.add(qubit)
            positions.append(qubit)
            if polarity:
                base |= 1 << qubit
        return np.array(sorted(positions), dtype=np.int64), base

    # -- gates ---------------------------------------------------------

    def apply_x(self, qubit: int) -> None:
        positions, base = self._fixed((), qubit)
        _kernels.pair_swap(self.amplitudes, positions, base, 1 << qubit)
        self.counter.count_single()

    def apply_ry(self, qubit: int, theta: float) -> None:
        positions, base = self._fixed((), qubit)
        _kernels.pair_mix(self.amplitudes, positions, base, 1 << qubit, ry_matrix(theta))
        self.counter.count_single()

    def apply_h(self, qubit: int) -> None:
        # H == X . Ry(pi/2); two one-qubit calls by the counting rules.
        self.apply_ry(qubit, math.pi / 2.0)
        self.apply_x(qubit)

    def apply_controlled_u(self, controls, target: int, u: np.ndarray) -> None:
        """Apply a 2x2 unitary to `target` where all controls match.

        `controls` is a list of (qubit, polarity) pairs; an empty list
        applies the bare unitary.
        """
        u = np.asarray(u, dtype=np.complex128)
        if u.shape != (2, 2):
            raise ValueError("u must be a 2x2 matrix")
        positions, base = self._fixed(controls, target)
        if np.array_equal(u, X_MATRIX):
            _kernels.pair_swap(self.amplitudes, positions, base, 1 << target)
        else:
            _kernels.pair_mix(self.amplitudes, positions, base, 1 << target, u)
        if len(controls) == 0:
            self.counter.count_single()
        else:
            self.counter.count_controlled(len(controls))

    def apply_cx(self, control: int, target: int) -> None:
        self.apply_controlled_u([(control, 1)], target, X_MATRIX)

    def apply_ccx(self, control_a: int, control_b: int, target: int) -> None:
        self.apply_controlled_u([(control_a, 1), (control_b, 1)], target, X_MATRIX)

    def apply_cry(self, control: int, target: int, theta: float) -> None:
        self.apply_controlled_u([(control, 1)], target, ry_matrix(theta))

    def apply_ncx(self, controls, target: int, scratch) -> None:
        """Multi-controlled X via a clean-scratch chain of Toffolis.

        Needs len(controls) - 2 scratch qubits in |0>; they are restored
        to |0> by the uncompute half.  One or two controls need no
        scratch.
        """
        controls = list(controls)
        scratch = list(scratch)
        if len(controls) == 0:
            raise ValueError("need at least one control")
        if len(controls) == 1:
            self.apply_cx(controls[0], target)
            return
        if len(controls) == 2:
            self.apply_ccx(controls[0], controls[1], target)
            return
        need = len(controls) - 2
        if len(scratch) < need:
            raise CapacityError(
                f"{len(controls)}-controlled X needs {need} scratch qubits, got {len(scratch)}"
            )
        used = set(controls) | {target}
        for s in scratch[:need]:
            if s in used:
                raise ValueError(f"scratch qubit {s} overlaps controls or target")
        chain = scratch[:need]
        self.apply_ccx(controls[0], controls[1], chain[0])
        for i in range(1, need):
            self.apply_ccx(controls[i + 1], chain[i - 1], chain[i])
        self.apply_ccx(controls[-1], chain[-1], target)
        for i in range(need - 1, 0, -1):
            self.apply_ccx(controls[i + 1], chain[i - 1], chain[i])
        self.apply_ccx(controls[0], controls[1], chain[0])

    def apply_cswap(self, control: int, qubit_a: int, qubit_b: int) -> None:
        self.apply_cx(qubit_b, qubit_a)
        self.apply_ccx(control, qubit_a, qubit_b)
        self.apply_cx(qubit_b, qubit_a)

    # -- measurement-side operations ------------------------------------

    def probability_of(self, qubit: int, outcome: int) -> float:
        self._check_qubit(qubit)
        view = self.amplitudes.reshape(-1, 2, 1 << qubit)
        slice_ = view[:, outcome, :]
        return float(np.real(np.einsum("ij,ij->", np.conj(slice_), slice_)))

    def post_select(self, qubit: int, outcome: int) -> float:
        """Project a qubit onto `outcome`, renormalize, return <P>.

        Raises ZeroNormError when the outcome carries (numerically) no
        amplitude, which signals an impossible post-selection.
        """
        if outcome not in (0, 1):
            raise ValueError("outcome must be 0 or 1")
        probability = self.probability_of(qubit, outcome)
        if probability < POST_SELECT_MIN_PROBABILITY:
            raise ZeroNormError(
                f"post-selecting qubit {qubit} = {outcome} has probability {probability:.3e}"
            )
        view = self.amplitudes.reshape(-1, 2, 1 << qubit)
        view[:, 1 - outcome, :] = 0.0
        view[:, outcome, :] /= math.sqrt(probability)
        return probability

    def register_probabilities(self, register: str) -> np.ndarray:
        """Marginal |amplitude|^2 distribution of one register."""
        width = self.layout.width(register)
        offset = self.layout.offset(register)
        probs = np.abs(self.amplitudes) ** 2
        probs = probs.reshape(-1, 1 << width, 1 << offset)
        return probs.sum(axis=(0, 2))

    def sample_register(
        self, register: str, shots: int, seed: int | None = None
    ) -> dict[str, int]:
        """Seeded i.i.d. sampling of a register's marginal distribution."""
        if shots < 1:
            raise ValueError("shots must be >= 1")
        probs = self.register_probabilities(register)
        probs = probs / probs.sum()
        rng = np.random.default_rng(seed)
        counts = rng.multinomial(shots, probs)
        width = self.layout.width(register)
        return {
            format(value, f"0{width}b"): int(count)
            for value, count in enumerate(counts)
            if count
        }

    def amplitude(self, values: dict[str, int]) -> complex:
        return complex(self.amplitudes[self.layout.index_of(values)])

    def register_vector(self, register: str, fixed: dict[str, int]) -> np.ndarray:
        """Pure state of one register, the others fixed to basis values.

        `fixed` must give the basis value of every other register; the
        slice must hold all amplitude mass.
        """
        others = {name for name, _ in self.layout.registers} - {register}
        if set(fixed) != others:
            raise ValueError(f"fixed must cover registers {sorted(others)}")
        base = self.layout.index_of(fixed)
        offset = self.layout.offset(register)
        width = self.layout.width(register)
        idx = base + (np.arange(1 << width) << offset)
        vector = self.amplitudes[idx].copy()
        mass = float(np.real(np.vdot(vector, vector)))
        if abs(mass - 1.0) > REGISTER_PURITY_TOLERANCE:
            raise ZeroNormError(
                f"register {register!r} is not pure over the fixed slice (mass {mass:.6f})"
            )
        return vector / math.sqrt(mass)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def check_norm(self, tolerance: float = NORM_TOLERANCE) -> None:
        drift = abs(self.norm() - 1.0)
        if drift > tolerance:
            raise ZeroNormError(f"norm drifted by {drift:.3e}")
