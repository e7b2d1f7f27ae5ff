"""Shared test utilities: random program generation and dense oracles."""

from __future__ import annotations

import numpy as np

from spinchain import GateKind, Program, make_gate

ALL_KINDS = tuple(GateKind)


def random_gate(rng: np.random.Generator, num_qubits: int, kinds=ALL_KINDS):
    if num_qubits < 2:
        kinds = tuple(k for k in kinds if k.num_qubits == 1)
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind.num_qubits == 2:
        qubits = [int(q) for q in rng.choice(num_qubits, size=2, replace=False)]
    else:
        qubits = [int(rng.integers(num_qubits))]
    angles = [float(rng.uniform(-2 * np.pi, 2 * np.pi)) for _ in range(kind.num_angles)]
    return make_gate(kind, qubits, angles)


def random_program(rng: np.random.Generator, num_qubits: int, num_gates: int, kinds=ALL_KINDS):
    gates = tuple(random_gate(rng, num_qubits, kinds) for _ in range(num_gates))
    return Program(num_qubits, gates)


def dense_gate_oracle(matrix: np.ndarray, qubits, num_qubits: int) -> np.ndarray:
    """Dense operator built by scalar enumeration over basis states.

    Deliberately naive: walks every basis index with plain Python bit
    arithmetic, independent of any vectorized kernel under test.  Qubit 0 is
    the most significant bit.
    """
    dim = 1 << num_qubits
    out = np.zeros((dim, dim), dtype=np.complex128)
    shifts = [num_qubits - 1 - q for q in qubits]
    k = len(qubits)
    for col in range(dim):
        in_bits = 0
        for pos, shift in enumerate(shifts):
            in_bits |= ((col >> shift) & 1) << (k - 1 - pos)
        for out_bits in range(1 << k):
            row = col
            for pos, shift in enumerate(shifts):
                bit = (out_bits >> (k - 1 - pos)) & 1
                row = (row & ~(1 << shift)) | (bit << shift)
            out[row, col] += matrix[out_bits, in_bits]
    return out


def programs_structurally_equal(a: Program, b: Program, angle_tol: float = 1e-12) -> bool:
    if a.num_qubits != b.num_qubits or len(a.gates) != len(b.gates):
        return False
    for ga, gb in zip(a.gates, b.gates):
        if ga.kind is not gb.kind or ga.qubits != gb.qubits:
            return False
        if any(abs(x - y) > angle_tol for x, y in zip(ga.angles, gb.angles)):
            return False
    return True
