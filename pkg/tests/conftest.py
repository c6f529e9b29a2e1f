import time
from pathlib import Path

import pytest

import qft_mcs as q
from qft_mcs import _kernels

TREES_DIR = Path(__file__).resolve().parent.parent / "trees"


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels():
    """Trigger the one-off JIT compile so timed tests measure simulation."""
    _kernels.warm_up()


def load_tree(name: str) -> q.FaultTree:
    return q.parse_fault_tree((TREES_DIR / name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def three_mcs_tree():
    return load_tree("three_mcs.ft")


@pytest.fixture(scope="session")
def weighted4_tree():
    return load_tree("weighted4.ft")


@pytest.fixture(scope="session")
def pairs8_tree():
    return load_tree("redundant_pairs.ft")


@pytest.fixture(scope="session")
def pairs8_proposed_sweep(pairs8_tree):
    """Amplification sweep on the 23-qubit oracle, shared across tests.

    Returns (runs for j = 0..10 with 10^4 samples each, wall seconds).
    """
    start = time.perf_counter()
    runs = q.sweep(pairs8_tree, "proposed", 10, shots=10_000, seed=1701)
    return runs, time.perf_counter() - start


@pytest.fixture(scope="session")
def pairs8_naive_sweep(pairs8_tree):
    """Exact-only naive sweep for j = 0..12 (13 qubits, cheap)."""
    return q.sweep(pairs8_tree, "naive", 12)
