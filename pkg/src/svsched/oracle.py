"""Brute-force dense-matrix reference, independent of the scheduler kernels.

Everything here expands gates to full 2**n x 2**n operators and multiplies
them out, which is the slowest possible but hardest-to-get-wrong semantics.
Capped at small registers; used only for validation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CapacityError, Circuit, GateOp, StateVector

#: Dense operators above this size would need gigabytes; hard cap.
ORACLE_MAX_QUBITS = 12

DFT_MAX_QUBITS = 10


@dataclass(frozen=True)
class DenseOperator:
    num_qubits: int
    entries: np.ndarray  # (2**num_qubits, 2**num_qubits), complex128

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        if other.num_qubits != self.num_qubits:
            raise ValueError("operator sizes differ")
        return DenseOperator(self.num_qubits, self.entries @ other.entries)


def _check_size(num_qubits: int, cap: int):
    if num_qubits < 1:
        raise ValueError("need at least one qubit")
    if num_qubits > cap:
        raise CapacityError(f"dense oracle capped at {cap} qubits, got {num_qubits}")


def gate_to_dense(gate: GateOp, num_qubits: int) -> DenseOperator:
    """Expand a gate to its full matrix: identity on basis states whose
    controls are unmet, the 2x2 block action on the target bit elsewhere."""
    _check_size(num_qubits, ORACLE_MAX_QUBITS)
    for q in (gate.target, *gate.controls):
        if q >= num_qubits:
            raise ValueError(f"qubit {q} out of range for {num_qubits} qubits")
    dim = 1 << num_qubits
    stride = 1 << gate.target
    m = gate.matrix
    out = np.eye(dim, dtype=np.complex128)
    for k in range(dim):
        if k & stride:
            continue  # visit each pair once, from its bit-t-clear element
        if all((k >> c) & 1 for c in gate.controls):
            p2 = k | stride
            out[k, k] = m.a
            out[k, p2] = m.b
            out[p2, k] = m.c
            out[p2, p2] = m.d
    return DenseOperator(num_qubits, out)


def circuit_to_dense(circuit: Circuit) -> DenseOperator:
    """Left-to-right product of a circuit's gates as one dense operator."""
    _check_size(circuit.num_qubits, ORACLE_MAX_QUBITS)
    dim = 1 << circuit.num_qubits
    out = np.eye(dim, dtype=np.complex128)
    for gate in circuit.gates:
        out = gate_to_dense(gate, circuit.num_qubits).entries @ out
    return DenseOperator(circuit.num_qubits, out)


def dense_apply(op: DenseOperator, state: StateVector) -> StateVector:
    """Full matrix-vector product; returns a fresh double-precision state."""
    if op.num_qubits != state.num_qubits:
        raise ValueError(
            f"operator is over {op.num_qubits} qubits, state over {state.num_qubits}"
        )
    return StateVector(
        state.num_qubits, op.entries @ state.amplitudes.astype(np.complex128)
    )


def dft_reference(num_qubits: int) -> DenseOperator:
    """The discrete Fourier transform matrix: entries w**(j*k) / sqrt(2**n)
    with w = exp(2*pi*i / 2**n)."""
    _check_size(num_qubits, DFT_MAX_QUBITS)
    dim = 1 << num_qubits
    j = np.arange(dim)
    entries = np.exp(2j * np.pi * np.outer(j, j) / dim) / np.sqrt(dim)
    return DenseOperator(num_qubits, entries)


def bit_reversal_permutation(num_qubits: int) -> np.ndarray:
    """perm[k] = k with its num_qubits-bit binary representation reversed."""
    dim = 1 << num_qubits
    perm = np.zeros(dim, dtype=np.int64)
    for k in range(dim):
        r = 0
        for b in range(num_qubits):
            r |= ((k >> b) & 1) << (num_qubits - 1 - b)
        perm[k] = r
    return perm


def bit_reversal_operator(num_qubits: int) -> DenseOperator:
    """Permutation matrix R with R @ e_k = e_rev(k)."""
    _check_size(num_qubits, ORACLE_MAX_QUBITS)
    perm = bit_reversal_permutation(num_qubits)
    dim = 1 << num_qubits
    entries = np.zeros((dim, dim), dtype=np.complex128)
    entries[perm, np.arange(dim)] = 1.0
    return DenseOperator(num_qubits, entries)
