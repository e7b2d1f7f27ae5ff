"""First-order Trotter circuit generation and the matching exact propagator.

One evolution step of length dt applies the field layer sampled at the step
start time, then the bond layer over pairs (i, i+1) in ascending order.  A
run over `steps` steps yields steps+1 programs: program n evolves to time
n*dt, and program 0 contains only state preparation.

``exact_evolution`` integrates the same model by dense eigendecomposition
and serves as the convergence oracle for the circuits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuits import Gate, GateKind, Program, make_gate
from .hamiltonian import HeisenbergModel, field_at, hamiltonian_matrix, validate
from .simulator import (
    MAX_STATE_QUBITS,
    MagnetizationSeries,
    NoiseParams,
    _spin_bit,
)

BACKENDS = ("internal", "ibm", "rigetti")
COMPILE_MODES = ("none", "generic", "domain_specific")

DEFAULT_SUBSTEPS = 64


@dataclass(frozen=True, slots=True)
class SimulationPlan:
    """Everything about a run that is not the physics: grid, sampling, target."""

    num_qubits: int
    initial_spins: tuple[str, ...]
    delta_t: float = 0.1
    steps: int = 10
    shots: int = 0
    backend: str = "internal"
    compile_mode: str = "none"
    noise: NoiseParams | None = None
    seed: int = 1


def validate_plan(plan: SimulationPlan) -> list[str]:
    """All plan validation failures; an empty list means valid."""
    errors: list[str] = []
    if not 1 <= plan.num_qubits <= MAX_STATE_QUBITS:
        errors.append(
            f"num_qubits: must be in [1, {MAX_STATE_QUBITS}], got {plan.num_qubits}"
        )
    if plan.initial_spins is not None:
        if len(plan.initial_spins) != plan.num_qubits:
            errors.append(
                f"initial_spins: got {len(plan.initial_spins)} entries for "
                f"{plan.num_qubits} qubit(s)"
            )
        for spin in plan.initial_spins:
            if str(spin).strip().lower() not in ("up", "down", "0", "1"):
                errors.append(f"initial_spins: unknown spin {spin!r}")
                break
    if not (math.isfinite(plan.delta_t) and plan.delta_t > 0):
        errors.append(f"delta_t: must be positive and finite, got {plan.delta_t!r}")
    if plan.steps < 0:
        errors.append(f"steps: must be >= 0, got {plan.steps}")
    if plan.shots < 0:
        errors.append(f"shots: must be >= 0 (0 selects exact mode), got {plan.shots}")
    if plan.backend not in BACKENDS:
        errors.append(f"backend: must be one of {BACKENDS}, got {plan.backend!r}")
    if plan.compile_mode not in COMPILE_MODES:
        errors.append(
            f"compile_mode: must be one of {COMPILE_MODES}, got {plan.compile_mode!r}"
        )
    return errors


@dataclass(frozen=True, slots=True)
class CircuitSeries:
    """The steps+1 programs of one run, in time order."""

    programs: tuple[Program, ...]

    def __len__(self) -> int:
        return len(self.programs)

    def __iter__(self):
        return iter(self.programs)

    def __getitem__(self, index: int) -> Program:
        return self.programs[index]


def state_prep_gates(initial_spins) -> list[Gate]:
    """X on every spin-down site; spin-up is the |0> default."""
    gates = []
    for q, spin in enumerate(initial_spins or ()):
        if _spin_bit(spin) == 1:
            gates.append(make_gate(GateKind.X, [q]))
    return gates


def bond_evolution_gates(
    jx: float, jy: float, jz: float, dt_over_hbar: float, a: int, b: int
) -> list[Gate]:
    """Circuit for exp(i * dt_over_hbar * (jx XX + jy YY + jz ZZ)) on (a, b).

    The three factors commute, so their product is exact for a single bond.
    Factors with zero coupling are omitted entirely.
    """
    gates: list[Gate] = []

    def zz_factor(theta: float, qa: int, qb: int) -> list[Gate]:
        return [
            make_gate(GateKind.CNOT, [qa, qb]),
            make_gate(GateKind.RZ, [qb], [-2.0 * theta]),
            make_gate(GateKind.CNOT, [qa, qb]),
        ]

    if jx != 0.0:
        gates += [make_gate(GateKind.H, [a]), make_gate(GateKind.H, [b])]
        gates += zz_factor(jx * dt_over_hbar, a, b)
        gates += [make_gate(GateKind.H, [a]), make_gate(GateKind.H, [b])]
    if jy != 0.0:
        half = math.pi / 2
        gates += [
            make_gate(GateKind.RX, [a], [half]),
            make_gate(GateKind.RX, [b], [half]),
        ]
        gates += zz_factor(jy * dt_over_hbar, a, b)
        gates += [
            make_gate(GateKind.RX, [a], [-half]),
            make_gate(GateKind.RX, [b], [-half]),
        ]
    if jz != 0.0:
        gates += zz_factor(jz * dt_over_hbar, a, b)
    return gates


def field_evolution_gates(
    h: float, dt_over_hbar: float, axis: str, num_qubits: int
) -> list[Gate]:
    """One rotation per qubit for exp(i * h * dt_over_hbar * P) on each site.

    Returns an empty layer when h is exactly zero.
    """
    if axis not in ("x", "y", "z"):
        raise ValueError(f"axis must be x, y or z, got {axis!r}")
    if h == 0.0:
        return []
    kind = {"x": GateKind.RX, "y": GateKind.RY, "z": GateKind.RZ}[axis]
    angle = -2.0 * h * dt_over_hbar
    return [make_gate(kind, [q], [angle]) for q in range(num_qubits)]


def generate_circuits(model: HeisenbergModel, plan: SimulationPlan) -> CircuitSeries:
    """Build the steps+1 Trotter programs for one run.

    The field is sampled at the step start time m*delta_t, so every program
    shares the gates of its predecessors as a prefix.
    """
    errors = validate(model)
    errors += validate_plan(plan)
    if errors:
        raise ValueError("invalid simulation inputs: " + "; ".join(errors))
    n = plan.num_qubits
    dt_over_hbar = plan.delta_t / model.hbar
    prep = state_prep_gates(plan.initial_spins)
    programs = [Program(n, tuple(prep))]
    gates = list(prep)
    for m in range(plan.steps):
        h = field_at(model.field, m * plan.delta_t)
        gates += field_evolution_gates(h, dt_over_hbar, model.field_axis, n)
        for i in range(n - 1):
            gates += bond_evolution_gates(model.jx, model.jy, model.jz, dt_over_hbar, i, i + 1)
        programs.append(Program(n, tuple(gates)))
    return CircuitSeries(programs=tuple(programs))


def _initial_vector(plan: SimulationPlan) -> np.ndarray:
    n = plan.num_qubits
    index = 0
    for q, spin in enumerate(plan.initial_spins or ()):
        index |= _spin_bit(spin) << (n - 1 - q)
    psi = np.zeros(1 << n, dtype=np.complex128)
    psi[index] = 1.0
    return psi


def _z_expectations(psi: np.ndarray, n: int) -> list[float]:
    # Independent of the simulator's reduction: weight each basis index by
    # the sign of the addressed bit.
    probs = np.abs(psi) ** 2
    idx = np.arange(probs.size)
    out = []
    for q in range(n):
        bit = (idx >> (n - 1 - q)) & 1
        out.append(float(np.dot(1.0 - 2.0 * bit, probs)))
    return out


def exact_evolution(
    model: HeisenbergModel, plan: SimulationPlan, substeps: int = DEFAULT_SUBSTEPS
) -> MagnetizationSeries:
    """Reference dynamics by dense time-ordered integration.

    Each Trotter interval delta_t is cut into ``substeps`` slices; each slice
    applies exp(-i * H(t*) * delta / hbar) with H sampled at the slice
    midpoint and exponentiated through an eigendecomposition.  This is the
    oracle the circuit series is expected to converge to as delta_t -> 0.
    """
    errors = validate(model)
    errors += validate_plan(plan)
    if errors:
        raise ValueError("invalid simulation inputs: " + "; ".join(errors))
    if substeps < 1:
        raise ValueError(f"substeps must be >= 1, got {substeps}")
    n = plan.num_qubits
    delta = plan.delta_t / substeps
    psi = _initial_vector(plan)

    field_is_static = (
        model.field.mode == "constant"
        or model.field.amplitude == 0.0
        or (model.field.mode == "sinusoid" and model.field.frequency == 0.0)
    )

    def propagator(t_mid: float) -> np.ndarray:
        h = hamiltonian_matrix(model, t_mid, n)
        w, v = np.linalg.eigh(h)
        phases = np.exp(-1j * w * delta / model.hbar)
        return (v * phases) @ v.conj().T

    static_u = propagator(0.0) if field_is_static else None

    rows = [[m] for m in _z_expectations(psi, n)]
    times = [0.0]
    for step in range(plan.steps):
        for sub in range(substeps):
            if static_u is not None:
                u = static_u
            else:
                u = propagator(step * plan.delta_t + (sub + 0.5) * delta)
            psi = u @ psi
        times.append((step + 1) * plan.delta_t)
        for q, m in enumerate(_z_expectations(psi, n)):
            rows[q].append(m)
    return MagnetizationSeries(
        times=tuple(times), values=tuple(tuple(r) for r in rows)
    )
