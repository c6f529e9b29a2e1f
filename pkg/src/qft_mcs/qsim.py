"""Statevector circuit simulator.

Gate set: Pauli-X, Pauli-Z, Hadamard, RY(theta), and multi-controlled NOT.
A state over ``n`` qubits is the full array of 2^n complex amplitudes;
qubit ``j`` is bit ``j`` of the amplitude index (least significant bit
first), and a measured bitstring reads qubit 0 at position 0.

Gates are applied with stride/bitmask kernels; no 2^n x 2^n matrix is ever
materialized.  Pauli-X layers are tracked as an index-XOR relabeling and
folded into the neighbouring gates, which makes X free and leaves every
observable amplitude identical to literal application.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels

X = "X"
Z = "Z"
H = "H"
RY = "RY"
MCNOT = "MCNOT"

DEFAULT_MAX_QUBITS = 26  # 2^26 complex128 amplitudes = 1 GiB

_SQRT1_2 = 1.0 / math.sqrt(2.0)


class CapacityError(RuntimeError):
    """A requested state does not fit under the configured qubit cap."""


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    controls: tuple[int, ...] = ()
    theta: float = 0.0

    def __post_init__(self):
        if self.kind not in (X, Z, H, RY, MCNOT):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == MCNOT:
            if not self.controls:
                raise ValueError("MCNOT needs at least one control")
            if len(set(self.controls)) != len(self.controls):
                raise ValueError("MCNOT controls must be distinct")
            if self.target in self.controls:
                raise ValueError("MCNOT target collides with a control")
        elif self.controls:
            raise ValueError(f"{self.kind} takes no controls")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + (self.target,)

    def adjoint(self) -> "Gate":
        if self.kind == RY:
            return replace(self, theta=-self.theta)
        return self  # X, Z, H, MCNOT are self-adjoint


def x(q: int) -> Gate:
    return Gate(X, q)


def z(q: int) -> Gate:
    return Gate(Z, q)


def h(q: int) -> Gate:
    return Gate(H, q)


def ry(theta: float, q: int) -> Gate:
    return Gate(RY, q, theta=theta)


def mcnot(controls, target: int) -> Gate:
    return Gate(MCNOT, target, tuple(controls))


def cnot(control: int, target: int) -> Gate:
    return Gate(MCNOT, target, (control,))


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over a fixed-width qubit registry."""

    n_qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < self.n_qubits:
                    raise ValueError(f"qubit {q} out of range for {self.n_qubits}-qubit circuit")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if self.n_qubits != other.n_qubits:
            raise ValueError("cannot concatenate circuits of different widths")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def adjoint(self) -> "Circuit":
        return Circuit(self.n_qubits, tuple(g.adjoint() for g in reversed(self.gates)))

    def dumps(self) -> str:
        """One gate per line: ``GATE kind qubits... [theta]``.

        MCNOT lists its controls first and the target last.
        """
        lines = []
        for g in self.gates:
            parts = ["GATE", g.kind, *(str(q) for q in g.qubits)]
            if g.kind == RY:
                parts.append(repr(g.theta))
            lines.append(" ".join(parts))
        return "\n".join(lines) + ("\n" if lines else "")


class StateVector:
    """Mutable 2^n amplitude array with in-place gate application.

    All public accessors present amplitudes in logical index order; the
    internal X relabeling is never observable.  A single instance must be
    driven by one executor at a time.
    """

    def __init__(self, n_qubits: int, max_qubits: int = DEFAULT_MAX_QUBITS):
        if n_qubits < 1:
            raise ValueError("need at least one qubit")
        if n_qubits > max_qubits:
            raise CapacityError(
                f"{n_qubits} qubits need {(1 << n_qubits) * 16 / 2**30:.1f} GiB; "
                f"cap is {max_qubits} qubits"
            )
        self._n = n_qubits
        self._amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        self._amps[0] = 1.0
        self._flip_mask = 0

    @classmethod
    def from_amplitudes(cls, amplitudes, max_qubits: int = DEFAULT_MAX_QUBITS) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size < 2 or amps.size & (amps.size - 1):
            raise ValueError("amplitude count must be a power of two covering >= 1 qubit")
        state = cls(int(amps.size).bit_length() - 1, max_qubits=max_qubits)
        state._amps[:] = amps
        return state

    @property
    def n_qubits(self) -> int:
        return self._n

    @property
    def amplitudes(self) -> np.ndarray:
        """Amplitudes in logical order.  Treat as read-only."""
        self._materialize()
        return self._amps

    def copy(self) -> "StateVector":
        dup = StateVector.__new__(StateVector)
        dup._n = self._n
        dup._amps = self._amps.copy()
        dup._flip_mask = self._flip_mask
        return dup

    def norm_squared(self) -> float:
        return float(np.vdot(self._amps, self._amps).real)

    def apply_gate(self, gate: Gate) -> "StateVector":
        for q in gate.qubits:
            if not 0 <= q < self._n:
                raise ValueError(f"qubit {q} out of range for {self._n}-qubit state")
        kind = gate.kind
        if kind == X:
            self._flip_mask ^= 1 << gate.target
        elif kind == Z:
            flipped = (self._flip_mask >> gate.target) & 1
            d0, d1 = (complex(-1), complex(1)) if flipped else (complex(1), complex(-1))
            _kernels.apply_diag2(self._amps, d0, d1, gate.target, self._n)
        elif kind in (H, RY):
            if kind == H:
                u00 = u01 = u10 = _SQRT1_2
                u11 = -_SQRT1_2
            else:
                c, s = math.cos(gate.theta / 2.0), math.sin(gate.theta / 2.0)
                u00, u01, u10, u11 = c, -s, s, c
            if (self._flip_mask >> gate.target) & 1:
                u00, u01, u10, u11 = u11, u10, u01, u00  # conjugate by X
            _kernels.apply_2x2(
                self._amps, complex(u00), complex(u01), complex(u10), complex(u11),
                gate.target, self._n,
            )
        else:  # MCNOT: flip the target wherever every control reads 1
            control_add = 0
            for c in gate.controls:
                if not (self._flip_mask >> c) & 1:
                    control_add += 1 << c
            pinned = np.array(sorted(gate.qubits), dtype=np.int64)
            _kernels.apply_controlled_flip(
                self._amps, pinned, control_add, gate.target, self._n
            )
        return self

    def apply_circuit(self, circuit: Circuit, check_norm: bool = False) -> "StateVector":
        if circuit.n_qubits != self._n:
            raise ValueError(
                f"circuit width {circuit.n_qubits} does not match state width {self._n}"
            )
        for gate in circuit.gates:
            self.apply_gate(gate)
            if check_norm:
                drift = abs(self.norm_squared() - 1.0)
                if drift >= 1e-10:
                    raise ValueError(f"norm drifted by {drift:.3e} after {gate}")
        return self

    def probabilities(self) -> np.ndarray:
        """Born-rule probabilities over all 2^n logical basis states."""
        self._materialize()
        return np.abs(self._amps) ** 2

    def marginal_probability(self, qubit: int, value: int) -> float:
        """Probability that measuring ``qubit`` yields ``value``."""
        if not 0 <= qubit < self._n:
            raise ValueError(f"qubit {qubit} out of range")
        if value not in (0, 1):
            raise ValueError("value must be 0 or 1")
        phys = value ^ ((self._flip_mask >> qubit) & 1)
        view = self._amps.reshape(-1, 2, 1 << qubit)
        return float(np.sum(np.abs(view[:, phys, :]) ** 2))

    def sample(self, shots: int, seed) -> np.ndarray:
        """Draw ``shots`` iid basis-state indices (bit j = qubit j).

        Inverse-CDF sampling over the precomputed cumulative distribution,
        reproducible from ``seed`` (numpy PCG64).
        """
        if shots < 1:
            raise ValueError("shots must be >= 1")
        rng = np.random.default_rng(seed)
        cum = np.cumsum(self.probabilities())
        draws = np.searchsorted(cum, rng.random(shots) * cum[-1], side="right")
        return np.minimum(draws, self._amps.size - 1).astype(np.int64)

    def dump_csv(self, fh) -> None:
        """Write ``index,re,im`` rows; refused above 10 qubits."""
        if self._n > 10:
            raise ValueError("statevector dump is limited to 10 qubits")
        amps = self.amplitudes
        fh.write("index,re,im\n")
        for i, a in enumerate(amps):
            fh.write(f"{i},{float(a.real)!r},{float(a.imag)!r}\n")

    def _materialize(self) -> None:
        if self._flip_mask:
            idx = np.arange(self._amps.size, dtype=np.int64)
            self._amps = self._amps[idx ^ self._flip_mask]
            self._flip_mask = 0


def bitstring(index: int, n_qubits: int) -> str:
    """Basis index as text with qubit j at character position j."""
    return format(index, f"0{n_qubits}b")[::-1]
