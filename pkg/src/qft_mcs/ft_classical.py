"""Classical reference semantics for fault trees.

This module is the ground truth that every quantum-side result is checked
against: exact Boolean evaluation, the minimal-cut-set predicate and its
brute-force enumeration, the product probability law over basic events, and
seeded Monte Carlo sampling.

A configuration is a tuple of 0/1 ints, entry ``i`` being the outcome of
basic event ``i`` (1 = failed).  Where configurations are packed into
integers, bit ``i`` of the integer is basic event ``i``.
"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

import numpy as np

from .ft_model import AND, FaultTree

Config = tuple[int, ...]

ENUMERATION_CAP = 24
_MC_CHUNK = 4096


@dataclass(frozen=True)
class EvaluationTrace:
    """Outcomes of all intermediary gates (in tree order) and of TOP."""

    ie_bits: tuple[int, ...]
    top: int


@dataclass(frozen=True)
class McsEnumeration:
    mcs: tuple[Config, ...]
    cut_set_count: int
    config_count: int

    @property
    def mcs_count(self) -> int:
        return len(self.mcs)


def config_from_int(value: int, n_be: int) -> Config:
    return tuple((value >> i) & 1 for i in range(n_be))


def config_to_int(cfg: Config) -> int:
    return sum(bit << i for i, bit in enumerate(cfg))


def config_bits_str(cfg: Config) -> str:
    """Configuration as text, leftmost character = first basic event."""
    return "".join(str(b) for b in cfg)


def evaluate(tree: FaultTree, cfg: Config) -> EvaluationTrace:
    """Propagate a basic-event configuration through every gate."""
    if len(cfg) != tree.n_be:
        raise ValueError(f"config length {len(cfg)} does not match {tree.n_be} basic events")
    values = {be.id: int(cfg[i]) for i, be in enumerate(tree.basic_events)}
    ie_bits = []
    for gate in tree.gate_events:
        bit = _apply_op(gate.op, [values[ref] for ref in gate.inputs])
        values[gate.id] = bit
        ie_bits.append(bit)
    top = _apply_op(tree.top.op, [values[ref] for ref in tree.top.inputs])
    return EvaluationTrace(tuple(ie_bits), top)


def turn_off(cfg: Config, i: int) -> Config:
    """Copy of ``cfg`` with basic event ``i`` forced operational."""
    if not 0 <= i < len(cfg):
        raise IndexError(f"basic event index {i} out of range for {len(cfg)} events")
    return cfg[:i] + (0,) + cfg[i + 1:]


def is_mcs(tree: FaultTree, cfg: Config) -> bool:
    """Minimal cut set predicate: the system fails, and un-failing any single
    failed event saves it."""
    if evaluate(tree, cfg).top != 1:
        return False
    for i, bit in enumerate(cfg):
        if bit and evaluate(tree, turn_off(cfg, i)).top != 0:
            return False
    return True


def truth_table(tree: FaultTree) -> np.ndarray:
    """TOP outcome for every packed configuration 0 .. 2^n_be - 1 (bool array).

    Evaluates each gate once over a vector of all configurations, so the cost
    is linear in the gate count.
    """
    n = tree.n_be
    idx = np.arange(1 << n, dtype=np.int64)
    values: dict[str, np.ndarray] = {
        be.id: ((idx >> i) & 1).astype(bool) for i, be in enumerate(tree.basic_events)
    }
    result = None
    for gate in tree.all_gates:
        cols = [values[ref] for ref in gate.inputs]
        reducer = np.logical_and if gate.op == AND else np.logical_or
        result = reducer.reduce(cols)
        values[gate.id] = result
    return result


def mcs_table(tree: FaultTree) -> np.ndarray:
    """Minimal-cut-set flag for every packed configuration (bool array)."""
    table = truth_table(tree)
    idx = np.arange(table.size, dtype=np.int64)
    mcs = table.copy()
    for i in range(tree.n_be):
        bit = 1 << i
        failed = (idx & bit) != 0
        still_fails_without_i = table[idx ^ bit]
        mcs &= ~(failed & still_fails_without_i)
    return mcs


def enumerate_mcs(tree: FaultTree, cap: int = ENUMERATION_CAP) -> McsEnumeration:
    """Exact minimal cut sets by exhausting all 2^n_be configurations.

    Also reports the total cut-set count.  Refuses trees beyond ``cap``
    basic events; this is a desk-scale oracle, not a production algorithm.
    """
    if tree.n_be > cap:
        raise ValueError(f"{tree.n_be} basic events exceeds enumeration cap of {cap}")
    table = truth_table(tree)
    mcs = mcs_table(tree)
    patterns = np.nonzero(mcs)[0]
    configs = tuple(config_from_int(int(v), tree.n_be) for v in patterns)
    return McsEnumeration(configs, int(table.sum()), int(table.size))


def config_probability(tree: FaultTree, cfg: Config) -> float:
    """Product law over independent basic events."""
    if len(cfg) != tree.n_be:
        raise ValueError(f"config length {len(cfg)} does not match {tree.n_be} basic events")
    prob = 1.0
    for be, bit in zip(tree.basic_events, cfg):
        prob *= be.p if bit else 1.0 - be.p
    return prob


def monte_carlo_sample(
    tree: FaultTree, shots: int, seed: int
) -> Iterator[tuple[Config, EvaluationTrace]]:
    """Stream of iid sampled configurations with their evaluation traces.

    Basic event ``i`` is drawn Bernoulli(p_i) via numpy's PCG64 generator, so
    the stream is fully reproducible from ``seed``.  Gate propagation is
    vectorized over fixed-size chunks.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rng = np.random.default_rng(seed)
    p = np.array([be.p for be in tree.basic_events])
    remaining = shots
    while remaining > 0:
        m = min(remaining, _MC_CHUNK)
        remaining -= m
        draws = rng.random((m, tree.n_be)) < p
        values = {be.id: draws[:, i] for i, be in enumerate(tree.basic_events)}
        ie_cols = []
        for gate in tree.gate_events:
            cols = [values[ref] for ref in gate.inputs]
            reducer = np.logical_and if gate.op == AND else np.logical_or
            values[gate.id] = reducer.reduce(cols)
            ie_cols.append(values[gate.id])
        top_col = _apply_op_vec(tree.top.op, [values[ref] for ref in tree.top.inputs])
        cfg_rows = draws.astype(np.int8)
        ie_rows = (
            np.stack(ie_cols, axis=1).astype(np.int8) if ie_cols else np.zeros((m, 0), np.int8)
        )
        for k in range(m):
            cfg = tuple(int(b) for b in cfg_rows[k])
            trace = EvaluationTrace(tuple(int(b) for b in ie_rows[k]), int(top_col[k]))
            yield cfg, trace


def write_enumeration_csv(tree: FaultTree, fh, cap: int = ENUMERATION_CAP) -> McsEnumeration:
    """One row per configuration: ``config_bits, is_cut_set, is_mcs, probability``."""
    table = truth_table(tree) if tree.n_be <= cap else None
    if table is None:
        raise ValueError(f"{tree.n_be} basic events exceeds enumeration cap of {cap}")
    mcs = mcs_table(tree)
    fh.write("config_bits,is_cut_set,is_mcs,probability\n")
    for value in range(table.size):
        cfg = config_from_int(value, tree.n_be)
        fh.write(
            f"{config_bits_str(cfg)},{int(table[value])},{int(mcs[value])},"
            f"{config_probability(tree, cfg)!r}\n"
        )
    patterns = np.nonzero(mcs)[0]
    configs = tuple(config_from_int(int(v), tree.n_be) for v in patterns)
    return McsEnumeration(configs, int(table.sum()), int(table.size))


def write_sample_csv(
    tree: FaultTree, samples: Iterable[tuple[Config, EvaluationTrace]], fh
) -> int:
    """One row per drawn sample, same columns as :func:`write_enumeration_csv`."""
    fh.write("config_bits,is_cut_set,is_mcs,probability\n")
    count = 0
    for cfg, trace in samples:
        fh.write(
            f"{config_bits_str(cfg)},{trace.top},{int(is_mcs(tree, cfg))},"
            f"{config_probability(tree, cfg)!r}\n"
        )
        count += 1
    return count


def _apply_op(op: str, bits: list[int]) -> int:
    if op == AND:
        return int(all(bits))
    return int(any(bits))


def _apply_op_vec(op: str, cols: list[np.ndarray]) -> np.ndarray:
    reducer = np.logical_and if op == AND else np.logical_or
    return reducer.reduce(cols)
