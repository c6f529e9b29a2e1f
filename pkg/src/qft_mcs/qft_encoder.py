"""Compile a fault tree into a quantum circuit.

The registry is laid out as [basic events | intermediary events | TOP], so a
measured bitstring reads the basic-event outcomes first and the TOP outcome
last.  Construction:

* ``u_be``   puts each basic-event qubit into its Bernoulli superposition
  with an RY rotation whose angle encodes the failure probability.
* ``u_ie``   realizes each intermediary gate in topological order: AND is a
  single multi-controlled NOT into the gate's output qubit; OR is the
  De Morgan form (X every input, MCNOT, X the output, X every input again
  to restore them).
* ``u_top``  encodes the TOP gate the same way.

The composite ``u_ft`` leaves the intermediary and TOP qubits as
deterministic functions of the basic-event qubits on every basis state, so
measuring it is equivalent to Monte Carlo sampling plus propagation.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass

from .ft_model import AND, FaultTree
from .qsim import Circuit, Gate, mcnot, ry, x

_P_CEILING = 1.0 - 1e-15  # keeps the angle formula away from its pole


@dataclass(frozen=True)
class QftLayout:
    be_qubits: tuple[int, ...]
    ie_qubits: tuple[int, ...]
    top_qubit: int

    @property
    def n_qubits(self) -> int:
        return len(self.be_qubits) + len(self.ie_qubits) + 1


@dataclass(frozen=True)
class QftCircuit:
    layout: QftLayout
    u_be: Circuit
    u_ie: Circuit
    u_top: Circuit

    @property
    def u_ft(self) -> Circuit:
        return self.u_be + self.u_ie + self.u_top


def rotation_angle(p: float) -> float:
    """Rotation angle with sin^2(theta/2) = p; p = 1 maps to pi exactly."""
    if p >= 1.0:
        return math.pi
    p = min(max(p, 0.0), _P_CEILING)
    return 2.0 * math.atan(math.sqrt(p / (1.0 - p)))


def encode_gate(op: str, input_qubits: Sequence[int], output_qubit: int, n_qubits: int) -> Circuit:
    """Circuit segment computing an AND/OR of ``input_qubits`` into
    ``output_qubit`` (assumed |0>); OR restores its inputs afterwards."""
    inputs = tuple(input_qubits)
    if len(inputs) < 2:
        raise ValueError("gates take two or more inputs")
    if output_qubit in inputs:
        raise ValueError(f"output qubit {output_qubit} collides with an input")
    gates: list[Gate] = []
    if op == AND:
        gates.append(mcnot(inputs, output_qubit))
    else:
        gates.extend(x(q) for q in inputs)
        gates.append(mcnot(inputs, output_qubit))
        gates.append(x(output_qubit))
        gates.extend(x(q) for q in inputs)
    return Circuit(n_qubits, tuple(gates))


def layout_for(tree: FaultTree) -> QftLayout:
    n_be, n_ie = tree.n_be, tree.n_ie
    return QftLayout(
        be_qubits=tuple(range(n_be)),
        ie_qubits=tuple(range(n_be, n_be + n_ie)),
        top_qubit=n_be + n_ie,
    )


def encode_fault_tree(
    tree: FaultTree, probabilities: Sequence[float] | None = None
) -> QftCircuit:
    """Encode ``tree`` over an (n_be + n_ie + 1)-qubit registry.

    ``probabilities`` overrides the tree's failure probabilities (used for
    uniform exploration with all entries 0.5); the override is explicit and
    never applied silently.
    """
    layout = layout_for(tree)
    n = layout.n_qubits
    probs = tree.probabilities() if probabilities is None else tuple(probabilities)
    if len(probs) != tree.n_be:
        raise ValueError(f"expected {tree.n_be} probabilities, got {len(probs)}")

    qubit_of = {be.id: layout.be_qubits[i] for i, be in enumerate(tree.basic_events)}
    for k, gate in enumerate(tree.gate_events):
        qubit_of[gate.id] = layout.ie_qubits[k]

    u_be = Circuit(n, tuple(ry(rotation_angle(p), q) for p, q in zip(probs, layout.be_qubits)))

    ie_gates: list[Gate] = []
    for k, gate in enumerate(tree.gate_events):
        inputs = [qubit_of[ref] for ref in gate.inputs]
        ie_gates.extend(encode_gate(gate.op, inputs, layout.ie_qubits[k], n).gates)
    u_ie = Circuit(n, tuple(ie_gates))

    top_inputs = [qubit_of[ref] for ref in tree.top.inputs]
    u_top = encode_gate(tree.top.op, top_inputs, layout.top_qubit, n)

    return QftCircuit(layout, u_be, u_ie, u_top)
