"""Oracle circuit that computes the minimal-cut-set predicate into one qubit.

The registry spans 2*n_be + n_ie + 3 qubits, blocked in order:

    [basic events | intermediary events | TOP | per-event checks | MCS | aux]

Construction sketch (all basic events explored uniformly at p = 0.5):

1. Encode the fault tree, leaving the system outcome on the TOP qubit.
2. Uncompute the intermediary block so those qubits return to |0> and can
   be reused.
3. For each basic event i, re-encode the tree with that event's qubit
   substituted by the constant-|0> aux qubit, store the modified system
   outcome on check qubit i, XOR it with the event's own qubit via CNOT
   (which negates the stored outcome exactly when the event failed), then
   uncompute the intermediary block again.  Check qubit i then reads 1 iff
   either the event did not fail (clause trivially satisfied) or un-failing
   it saves the system.
4. A multi-controlled NOT over {TOP} and all check qubits writes the
   conjunction, the minimal-cut-set flag, into the MCS qubit.

On every supported basis state the flag equals the classical predicate, the
intermediary qubits read |0>, and the aux qubit reads |0>.
"""

from dataclasses import dataclass

from .ft_classical import Config, evaluate, turn_off
from .ft_model import FaultTree
from .qft_encoder import encode_gate, rotation_angle
from .qsim import Circuit, Gate, cnot, mcnot, ry

UNIFORM_P = 0.5


@dataclass(frozen=True)
class McsLayout:
    be_qubits: tuple[int, ...]
    ie_qubits: tuple[int, ...]
    top_qubit: int
    top_i_qubits: tuple[int, ...]
    mcs_qubit: int
    aux_qubit: int

    @property
    def n_qubits(self) -> int:
        return self.aux_qubit + 1


@dataclass(frozen=True)
class McsOracleCircuit:
    layout: McsLayout
    circuit: Circuit
    # Gate-count checkpoints: after the tree prep + first uncompute, then
    # after each per-event stage.  Lets tests simulate prefixes.
    stage_bounds: tuple[int, ...]


def mcs_layout(tree: FaultTree) -> McsLayout:
    n_be, n_ie = tree.n_be, tree.n_ie
    return McsLayout(
        be_qubits=tuple(range(n_be)),
        ie_qubits=tuple(range(n_be, n_be + n_ie)),
        top_qubit=n_be + n_ie,
        top_i_qubits=tuple(range(n_be + n_ie + 1, 2 * n_be + n_ie + 1)),
        mcs_qubit=2 * n_be + n_ie + 1,
        aux_qubit=2 * n_be + n_ie + 2,
    )


def build_mcs_oracle(tree: FaultTree) -> McsOracleCircuit:
    """Build the oracle over 2*n_be + n_ie + 3 qubits.

    The tree's own failure probabilities are ignored: the search space is
    explored uniformly, every basic event at p = 0.5.
    """
    layout = mcs_layout(tree)
    n = layout.n_qubits

    qubit_of = {be.id: layout.be_qubits[i] for i, be in enumerate(tree.basic_events)}
    for k, gate in enumerate(tree.gate_events):
        qubit_of[gate.id] = layout.ie_qubits[k]

    def ie_segment(mapping: dict[str, int]) -> Circuit:
        gates: list[Gate] = []
        for k, gate in enumerate(tree.gate_events):
            inputs = [mapping[ref] for ref in gate.inputs]
            gates.extend(encode_gate(gate.op, inputs, layout.ie_qubits[k], n).gates)
        return Circuit(n, tuple(gates))

    def top_segment(mapping: dict[str, int], output_qubit: int) -> Circuit:
        inputs = [mapping[ref] for ref in tree.top.inputs]
        return encode_gate(tree.top.op, inputs, output_qubit, n)

    theta = rotation_angle(UNIFORM_P)
    prep = Circuit(n, tuple(ry(theta, q) for q in layout.be_qubits))
    u_ie = ie_segment(qubit_of)
    prep = prep + u_ie + top_segment(qubit_of, layout.top_qubit) + u_ie.adjoint()

    circuit = prep
    bounds = [len(circuit)]
    for i, be in enumerate(tree.basic_events):
        substituted = dict(qubit_of)
        substituted[be.id] = layout.aux_qubit
        u_ie_sub = ie_segment(substituted)
        stage = (
            u_ie_sub
            + top_segment(substituted, layout.top_i_qubits[i])
            + Circuit(n, (cnot(layout.be_qubits[i], layout.top_i_qubits[i]),))
            + u_ie_sub.adjoint()
        )
        circuit = circuit + stage
        bounds.append(len(circuit))

    conjunction = mcnot((layout.top_qubit,) + layout.top_i_qubits, layout.mcs_qubit)
    circuit = circuit + Circuit(n, (conjunction,))

    return McsOracleCircuit(layout, circuit, tuple(bounds))


def clause_semantics_check(tree: FaultTree, cfg: Config, i: int) -> int:
    """Classical value of check qubit i for a basis configuration.

    Equals ``f(turn_off(cfg, i)) XOR cfg[i]``: the negated outcome of the
    modified system when event i failed, and the unmodified outcome (a
    trivially satisfied clause) when it did not.
    """
    if not 0 <= i < tree.n_be:
        raise IndexError(f"basic event index {i} out of range for {tree.n_be} events")
    return evaluate(tree, turn_off(cfg, i)).top ^ cfg[i]
