"""Amplitude amplification over fault-tree circuits.

Two search variants share one engine:

* naive:    the state preparation is the plain fault-tree circuit with every
            failure probability forced to 0.5, and the oracle marks states
            whose TOP qubit reads 1 (cut sets).
* proposed: the state preparation is the minimal-cut-set oracle circuit and
            the flag is its MCS qubit, so amplification targets minimal cut
            sets directly.

One iteration of the amplifier appends, in temporal order: the sign flip on
the flag qubit (a single Pauli-Z), the adjoint of the preparation, the
reflection about |0...0>, and the preparation again.  After j iterations the
flag probability follows sin^2((2j+1) * asin(sqrt(a))) where a is the
unamplified flag probability.
"""

import math
from dataclasses import dataclass

import numpy as np

from .ft_classical import mcs_table
from .ft_model import FaultTree
from .mcs_oracle import build_mcs_oracle
from .qft_encoder import encode_fault_tree
from .qsim import DEFAULT_MAX_QUBITS, Circuit, StateVector, h, mcnot, x, z

UNIFORM_P = 0.5


@dataclass(frozen=True)
class GroverSetup:
    a_circuit: Circuit
    flag_qubit: int

    def __post_init__(self):
        if not 0 <= self.flag_qubit < self.a_circuit.n_qubits:
            raise ValueError("flag qubit outside the circuit registry")

    @property
    def n_qubits(self) -> int:
        return self.a_circuit.n_qubits


@dataclass(frozen=True, eq=False)
class AmplifiedRun:
    """Exact and sampled statistics of one amplified state."""

    variant: str
    j: int
    exact_flag_probability: float
    exact_mcs_probability: float
    shots: int
    seed: int
    samples: np.ndarray | None = None
    empirical_flag_probability: float | None = None
    empirical_mcs_probability: float | None = None


def s_f_circuit(n_qubits: int, flag_qubit: int) -> Circuit:
    """Sign flip on every basis state whose flag qubit reads 1."""
    return Circuit(n_qubits, (z(flag_qubit),))


def s_0_circuit(n_qubits: int) -> Circuit:
    """Sign flip on |0...0> only, built from X, H and one MCNOT.

    Conjugating the MCNOT's target (fixed to qubit 0; any choice acts the
    same) by Hadamards turns it into a multi-controlled Z, and the X layers
    move the sign flip from |1...1> to |0...0>.
    """
    if n_qubits < 2:
        raise ValueError("the zero-state reflection needs at least 2 qubits")
    gates = [x(q) for q in range(n_qubits)]
    gates.append(h(0))
    gates.append(mcnot(tuple(range(1, n_qubits)), 0))
    gates.append(h(0))
    gates.extend(x(q) for q in range(n_qubits))
    return Circuit(n_qubits, tuple(gates))


def grover_operator(setup: GroverSetup) -> Circuit:
    n = setup.n_qubits
    return (
        s_f_circuit(n, setup.flag_qubit)
        + setup.a_circuit.adjoint()
        + s_0_circuit(n)
        + setup.a_circuit
    )


def theoretical_probability(a: float, j: int) -> float:
    """Flag probability after j iterations starting from base probability a."""
    if not 0.0 <= a <= 1.0:
        raise ValueError("a must be a probability")
    if j < 0:
        raise ValueError("iteration count must be >= 0")
    theta = math.asin(math.sqrt(a))
    return math.sin((2 * j + 1) * theta) ** 2


def best_j(a: float, j_max: int) -> int:
    """Iteration count in 0..j_max maximizing the flag probability.

    Ties break toward fewer iterations.
    """
    if not 0.0 < a < 1.0:
        raise ValueError("a must be strictly between 0 and 1")
    best, best_p = 0, theoretical_probability(a, 0)
    for j in range(1, j_max + 1):
        p = theoretical_probability(a, j)
        if p > best_p:
            best, best_p = j, p
    return best


def naive_setup(tree: FaultTree) -> GroverSetup:
    """Preparation = fault-tree circuit at uniform p; flag = TOP qubit."""
    qft = encode_fault_tree(tree, probabilities=[UNIFORM_P] * tree.n_be)
    return GroverSetup(qft.u_ft, qft.layout.top_qubit)


def proposed_setup(tree: FaultTree) -> GroverSetup:
    """Preparation = minimal-cut-set oracle; flag = MCS qubit."""
    oracle = build_mcs_oracle(tree)
    return GroverSetup(oracle.circuit, oracle.layout.mcs_qubit)


def run_naive(
    tree: FaultTree,
    j: int,
    shots: int = 0,
    seed: int = 0,
    literal_shots: bool = False,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> AmplifiedRun:
    return _amplified_runs(tree, "naive", [j], shots, seed, literal_shots, max_qubits)[0]


def run_proposed(
    tree: FaultTree,
    j: int,
    shots: int = 0,
    seed: int = 0,
    literal_shots: bool = False,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> AmplifiedRun:
    return _amplified_runs(tree, "proposed", [j], shots, seed, literal_shots, max_qubits)[0]


def sweep(
    tree: FaultTree,
    variant: str,
    j_max: int,
    shots: int = 0,
    seed: int = 0,
    literal_shots: bool = False,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> list[AmplifiedRun]:
    """Amplified runs for every j in 0..j_max, one statevector evolution."""
    return _amplified_runs(
        tree, variant, list(range(j_max + 1)), shots, seed, literal_shots, max_qubits
    )


def amplified_state(
    tree: FaultTree, variant: str, j: int, max_qubits: int = DEFAULT_MAX_QUBITS
) -> tuple[StateVector, GroverSetup]:
    """State after preparation plus j amplification iterations."""
    setup = _setup_for(tree, variant)
    if j < 0:
        raise ValueError("iteration count must be >= 0")
    state = StateVector(setup.n_qubits, max_qubits=max_qubits)
    state.apply_circuit(setup.a_circuit)
    operator = grover_operator(setup)
    for _ in range(j):
        state.apply_circuit(operator)
    return state, setup


def be_pattern_distribution(state: StateVector, n_be: int) -> np.ndarray:
    """Joint probability of each basic-event pattern, marginalized over the
    rest of the registry (basic events occupy the low qubits)."""
    return state.probabilities().reshape(-1, 1 << n_be).sum(axis=0)


def run_records_csv(runs: list[AmplifiedRun]) -> str:
    lines = ["variant,j,exact_flag_prob,empirical_flag_prob,shots,seed"]
    for r in runs:
        empirical = "" if r.empirical_flag_probability is None else repr(r.empirical_flag_probability)
        lines.append(f"{r.variant},{r.j},{r.exact_flag_probability!r},{empirical},{r.shots},{r.seed}")
    return "\n".join(lines) + "\n"


def _setup_for(tree: FaultTree, variant: str) -> GroverSetup:
    if variant == "naive":
        return naive_setup(tree)
    if variant == "proposed":
        return proposed_setup(tree)
    raise ValueError(f"unknown variant {variant!r}")


def _amplified_runs(
    tree: FaultTree,
    variant: str,
    js: list[int],
    shots: int,
    seed: int,
    literal_shots: bool,
    max_qubits: int,
) -> list[AmplifiedRun]:
    setup = _setup_for(tree, variant)
    if any(j < 0 for j in js):
        raise ValueError("iteration counts must be >= 0")

    mcs_patterns = np.nonzero(mcs_table(tree))[0]
    wanted = sorted(set(js))
    operator = grover_operator(setup)

    state = StateVector(setup.n_qubits, max_qubits=max_qubits)
    state.apply_circuit(setup.a_circuit)
    by_j: dict[int, AmplifiedRun] = {}
    current = 0
    for j in wanted:
        for _ in range(current, j):
            state.apply_circuit(operator)
        current = j
        by_j[j] = _analyze(
            state, setup, tree, variant, j, shots, seed, literal_shots, max_qubits, mcs_patterns
        )
    return [by_j[j] for j in js]


def _analyze(
    state: StateVector,
    setup: GroverSetup,
    tree: FaultTree,
    variant: str,
    j: int,
    shots: int,
    seed: int,
    literal_shots: bool,
    max_qubits: int,
    mcs_patterns: np.ndarray,
) -> AmplifiedRun:
    exact_flag = state.marginal_probability(setup.flag_qubit, 1)
    distribution = be_pattern_distribution(state, tree.n_be)
    exact_mcs = float(distribution[mcs_patterns].sum())

    samples = None
    empirical_flag = None
    empirical_mcs = None
    if shots > 0:
        if literal_shots:
            samples = _literal_samples(setup, j, shots, seed, max_qubits)
        else:
            samples = state.sample(shots, seed + j)
        flags = (samples >> setup.flag_qubit) & 1
        patterns = samples & ((1 << tree.n_be) - 1)
        empirical_flag = float(flags.mean())
        empirical_mcs = float(np.isin(patterns, mcs_patterns).mean())

    return AmplifiedRun(
        variant=variant,
        j=j,
        exact_flag_probability=exact_flag,
        exact_mcs_probability=exact_mcs,
        shots=shots,
        seed=seed,
        samples=samples,
        empirical_flag_probability=empirical_flag,
        empirical_mcs_probability=empirical_mcs,
    )


def _literal_samples(
    setup: GroverSetup, j: int, shots: int, seed: int, max_qubits: int
) -> np.ndarray:
    """One full state preparation and evolution per shot, sampled once each.

    Distributionally identical to drawing ``shots`` samples from a single
    evolution; kept for fidelity to per-measurement hardware execution.
    """
    operator = grover_operator(setup)
    out = np.empty(shots, dtype=np.int64)
    for k in range(shots):
        state = StateVector(setup.n_qubits, max_qubits=max_qubits)
        state.apply_circuit(setup.a_circuit)
        for _ in range(j):
            state.apply_circuit(operator)
        out[k] = state.sample(1, (seed + j, k))[0]
    return out
