"""Minimal cut set identification for coherent fault trees.

Parses a textual fault-tree format, provides exact classical semantics
(evaluation, minimal-cut-set enumeration, Monte Carlo sampling), encodes
trees into quantum circuits run on an embedded statevector simulator, and
amplifies the probability of sampling minimal cut sets with iterated
reflections, with closed-form expected-sample analytics to compare the
approaches.
"""

__version__ = "0.1.0"

from .analytics import (
    CollectionStats,
    ComparisonReport,
    MethodResult,
    comparison_report,
    coupon_collection_experiment,
    expected_samples_mc,
    expected_samples_qaa,
    harmonic,
    improvement_ratio,
)
from .ft_classical import (
    Config,
    EvaluationTrace,
    McsEnumeration,
    config_probability,
    enumerate_mcs,
    evaluate,
    is_mcs,
    monte_carlo_sample,
    turn_off,
)
from .ft_model import (
    AND,
    OR,
    BasicEvent,
    FaultTree,
    FaultTreeError,
    GateEvent,
    parse_fault_tree,
    serialize_fault_tree,
    validate,
)
from .mcs_oracle import McsLayout, McsOracleCircuit, build_mcs_oracle, clause_semantics_check
from .qaa_engine import (
    AmplifiedRun,
    GroverSetup,
    amplified_state,
    best_j,
    grover_operator,
    run_naive,
    run_proposed,
    s_0_circuit,
    s_f_circuit,
    sweep,
    theoretical_probability,
)
from .qft_encoder import QftCircuit, QftLayout, encode_fault_tree, encode_gate, rotation_angle
from .qsim import (
    DEFAULT_MAX_QUBITS,
    CapacityError,
    Circuit,
    Gate,
    StateVector,
    bitstring,
)

__all__ = [name for name in dir() if not name.startswith("_")]
