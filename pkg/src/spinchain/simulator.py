"""Local statevector backend: exact runs, multinomial sampling, Pauli noise.

Basis-state indexing matches the IR convention: qubit 0 is the leftmost
character of a bitstring, i.e. the most significant bit of the state index,
and spin-up is |0>.  All randomness flows through numpy's default PCG64
generator seeded explicitly, so identical seeds give identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .circuits import Gate, GateKind, Program, gate_matrix, make_gate

if TYPE_CHECKING:
    from .trotter import CircuitSeries, SimulationPlan

MAX_STATE_QUBITS = 24

_SPIN_BITS = {"up": 0, "down": 1, "0": 0, "1": 1}


class SimulationError(ValueError):
    """Raised for invalid simulator inputs."""


@dataclass
class StateVector:
    """A normalized pure state over ``num_qubits`` qubits."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.num_qubits,):
            raise SimulationError(
                f"amplitude vector has shape {self.amplitudes.shape}, "
                f"expected ({1 << self.num_qubits},)"
            )
        norm = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(norm - 1.0) > 1e-10:
            raise SimulationError(f"state is not normalized: |psi|^2 = {norm}")


def _spin_bit(spin: str) -> int:
    key = str(spin).strip().lower()
    if key not in _SPIN_BITS:
        raise SimulationError(f"initial spin must be up/down (or 0/1), got {spin!r}")
    return _SPIN_BITS[key]


def init_state(num_qubits: int, initial_spins: Sequence[str] | None = None) -> StateVector:
    """Product basis state with the given spin per site (default all up)."""
    if not 1 <= num_qubits <= MAX_STATE_QUBITS:
        raise SimulationError(
            f"num_qubits must be in [1, {MAX_STATE_QUBITS}], got {num_qubits}"
        )
    index = 0
    if initial_spins is not None:
        spins = list(initial_spins)
        if len(spins) != num_qubits:
            raise SimulationError(
                f"got {len(spins)} initial spins for {num_qubits} qubit(s)"
            )
        for q, spin in enumerate(spins):
            index |= _spin_bit(spin) << (num_qubits - 1 - q)
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(num_qubits, amps)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply one gate without materializing the 2^n x 2^n embedding.

    The amplitude vector is viewed as a rank-n tensor with one axis per
    qubit (axis q = qubit q); the gate contracts against its qubit axes.
    """
    n = state.num_qubits
    if any(q >= n for q in gate.qubits):
        raise SimulationError(f"gate on {gate.qubits} exceeds {n} qubit register")
    g = gate_matrix(gate)
    psi = state.amplitudes.reshape([2] * n)
    k = len(gate.qubits)
    gt = g.reshape([2] * (2 * k))
    moved = np.tensordot(gt, psi, axes=(list(range(k, 2 * k)), list(gate.qubits)))
    psi = np.moveaxis(moved, list(range(k)), list(gate.qubits))
    return StateVector(n, np.ascontiguousarray(psi).reshape(-1))


def run_statevector(program: Program, initial_spins: Sequence[str] | None = None) -> StateVector:
    """Run the whole program from the given product state."""
    state = init_state(program.num_qubits, initial_spins)
    for gate in program.gates:
        state = apply_gate(state, gate)
    return state


def expectation_z(state: StateVector, qubit: int) -> float:
    """<sigma^z> on one qubit: +1 for |0> (spin-up), -1 for |1>."""
    n = state.num_qubits
    if not 0 <= qubit < n:
        raise SimulationError(f"qubit {qubit} out of range for {n} qubits")
    probs = np.abs(state.amplitudes) ** 2
    p1 = float(probs.reshape([2] * n).sum(axis=tuple(a for a in range(n) if a != qubit))[1])
    return 1.0 - 2.0 * p1


def sample_counts(state: StateVector, shots: int, seed: int) -> dict[str, int]:
    """Multinomial z-basis measurement counts, keyed by bitstring."""
    if shots < 1:
        raise SimulationError(f"shots must be >= 1, got {shots}")
    probs = np.abs(state.amplitudes) ** 2
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    drawn = rng.multinomial(shots, probs)
    n = state.num_qubits
    return {
        format(i, f"0{n}b"): int(c) for i, c in enumerate(drawn) if c > 0
    }


def magnetization_from_counts(counts: dict[str, int], qubit: int) -> float:
    """Estimator (n_up - n_down) / shots for one qubit from sampled counts."""
    shots = sum(counts.values())
    if shots < 1:
        raise SimulationError("counts are empty")
    up = sum(c for bits, c in counts.items() if bits[qubit] == "0")
    return (up - (shots - up)) / shots


@dataclass(frozen=True, slots=True)
class NoiseParams:
    """Depolarizing-style Pauli noise strengths.

    After each gate, every qubit the gate touched is independently hit with a
    uniformly random non-identity Pauli with probability p1 (single-qubit
    gates) or p2 (two-qubit gates).
    """

    p1: float = 0.001
    p2: float = 0.01

    def __post_init__(self) -> None:
        for name in ("p1", "p2"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise SimulationError(f"{name} must be in [0, 1], got {p}")


_PAULI_GATES = (GateKind.X, GateKind.Y, GateKind.Z)


def run_noisy(
    program: Program,
    initial_spins: Sequence[str] | None,
    shots: int,
    noise: NoiseParams,
    seed: int,
) -> dict[str, int]:
    """Monte Carlo Pauli-noise sampling: one trajectory per shot.

    Draw order is fixed (per gate in program order, per touched qubit in gate
    order, then one measurement draw per shot), so results are reproducible
    for a given seed.  With p1 = p2 = 0 this reduces exactly to
    ``sample_counts`` of the noiseless final state under the same seed.
    """
    if shots < 1:
        raise SimulationError(f"shots must be >= 1, got {shots}")
    if noise.p1 == 0.0 and noise.p2 == 0.0:
        return sample_counts(run_statevector(program, initial_spins), shots, seed)
    rng = np.random.default_rng(seed)
    n = program.num_qubits
    counts: dict[str, int] = {}
    dim = 1 << n
    for _ in range(shots):
        state = init_state(n, initial_spins)
        for gate in program.gates:
            state = apply_gate(state, gate)
            p = noise.p1 if gate.kind.num_qubits == 1 else noise.p2
            for q in gate.qubits:
                if rng.random() < p:
                    pauli = _PAULI_GATES[rng.integers(3)]
                    state = apply_gate(state, make_gate(pauli, [q]))
        probs = np.abs(state.amplitudes) ** 2
        outcome = int(rng.choice(dim, p=probs / probs.sum()))
        bits = format(outcome, f"0{n}b")
        counts[bits] = counts.get(bits, 0) + 1
    return counts


@dataclass(frozen=True)
class MagnetizationSeries:
    """Per-qubit <sigma^z> (or its sampled estimate) over the time grid.

    ``values[q][k]`` is the magnetization of qubit q at ``times[k]``.
    """

    times: tuple[float, ...]
    values: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise SimulationError("magnetization series needs at least one qubit row")
        for row in self.values:
            if len(row) != len(self.times):
                raise SimulationError(
                    f"row length {len(row)} does not match {len(self.times)} times"
                )

    @property
    def num_qubits(self) -> int:
        return len(self.values)


def _is_prefix_chain(programs: Sequence[Program]) -> bool:
    for prev, cur in zip(programs, programs[1:]):
        if cur.gates[: len(prev.gates)] != prev.gates:
            return False
    return True


def _series_states(programs: Sequence[Program]):
    """Yield the final state of each program.

    A generated series grows by appending one Trotter step per program, so
    when each program extends its predecessor the evolution runs once and is
    snapshotted, instead of re-running every prefix from scratch.  The gate
    applications happen in the identical order either way, so the resulting
    amplitudes are bit-for-bit the same.
    """
    if programs and _is_prefix_chain(programs):
        state = init_state(programs[0].num_qubits)
        done = 0
        for program in programs:
            for gate in program.gates[done:]:
                state = apply_gate(state, gate)
            done = len(program.gates)
            yield state
    else:
        for program in programs:
            yield run_statevector(program)


def simulate_series(series: "CircuitSeries", plan: "SimulationPlan") -> MagnetizationSeries:
    """Run every program of a circuit series and collect magnetizations.

    Every program in the series already contains its own state-preparation
    gates, so execution always starts from the all-zero state.

    plan.shots == 0 selects exact expectation values; otherwise each program
    is sampled with ``plan.shots`` shots (with Pauli noise when plan.noise is
    set), using the derived seed ``plan.seed + program_index``.
    """
    n = plan.num_qubits
    rows: list[list[float]] = [[] for _ in range(n)]
    times: list[float] = []
    if plan.noise is not None and plan.shots > 0:
        for index, program in enumerate(series.programs):
            times.append(index * plan.delta_t)
            counts = run_noisy(program, None, plan.shots, plan.noise, plan.seed + index)
            for q in range(n):
                rows[q].append(magnetization_from_counts(counts, q))
    else:
        for index, state in enumerate(_series_states(series.programs)):
            times.append(index * plan.delta_t)
            if plan.shots == 0:
                for q in range(n):
                    rows[q].append(expectation_z(state, q))
            else:
                counts = sample_counts(state, plan.shots, plan.seed + index)
                for q in range(n):
                    rows[q].append(magnetization_from_counts(counts, q))
    return MagnetizationSeries(
        times=tuple(times), values=tuple(tuple(row) for row in rows)
    )
