"""Numba gate kernels operating on a flat complex128 amplitude array.

Qubit ``q`` is bit ``q`` of the amplitude index.  Every kernel updates
disjoint amplitude pairs in place, so parallel chunking cannot change the
result bitwise.  Index enumeration uses the bit-insertion trick: iterate a
compressed counter and re-insert the pinned bits to obtain amplitude
indices, which visits exactly the affected entries.
"""

import warnings

import numpy as np
from numba import njit, prange

# The sandboxed TBB probe is noisy but harmless; numba falls back to another
# threading layer.
warnings.filterwarnings("ignore", message="The TBB threading layer requires TBB version")


@njit(parallel=True, cache=True)
def apply_2x2(amps, u00, u01, u10, u11, t_bit, n_qubits):
    """In-place dense single-qubit update on all pairs split by ``t_bit``."""
    tk = 1 << t_bit
    half = 1 << (n_qubits - 1)
    for g in prange(half):
        i0 = ((g >> t_bit) << (t_bit + 1)) + (g & (tk - 1))
        i1 = i0 + tk
        a0 = amps[i0]
        a1 = amps[i1]
        amps[i0] = u00 * a0 + u01 * a1
        amps[i1] = u10 * a0 + u11 * a1


@njit(parallel=True, cache=True)
def apply_diag2(amps, d0, d1, t_bit, n_qubits):
    """In-place diagonal single-qubit update diag(d0, d1) on ``t_bit``."""
    tk = 1 << t_bit
    half = 1 << (n_qubits - 1)
    for g in prange(half):
        i0 = ((g >> t_bit) << (t_bit + 1)) + (g & (tk - 1))
        amps[i0] = d0 * amps[i0]
        amps[i0 + tk] = d1 * amps[i0 + tk]


@njit(parallel=True, cache=True)
def apply_controlled_flip(amps, pinned_bits, control_add, t_bit, n_qubits):
    """Swap amplitude pairs whose index matches the control pattern.

    ``pinned_bits`` holds the control bits plus the target bit in ascending
    order; ``control_add`` is the sum of 2^c over controls pinned to 1 (a
    control pinned to 0 contributes nothing).  The target bit itself is
    enumerated at 0 and the partner index is obtained by adding 2^t.
    """
    tk = 1 << t_bit
    count = 1 << (n_qubits - len(pinned_bits))
    for g in prange(count):
        i = 0
        i += g
        for b in pinned_bits:
            k = 1 << b
            i = ((i >> b) << (b + 1)) + (i & (k - 1))
        i0 = i + control_add
        i1 = i0 + tk
        tmp = amps[i0]
        amps[i0] = amps[i1]
        amps[i1] = tmp


def warm_up() -> None:
    """Force-compile all kernels on a 1-qubit state (cheap, cached on disk)."""
    amps = np.array([1.0 + 0j, 0.0 + 0j])
    apply_2x2(amps, 1 + 0j, 0j, 0j, 1 + 0j, 0, 1)
    apply_diag2(amps, 1 + 0j, 1 + 0j, 0, 1)
    two = np.array([1 + 0j, 0j, 0j, 0j])
    apply_controlled_flip(two, np.array([0, 1], dtype=np.int64), 1, 1, 2)
