"""Native-gate lowering and the domain-specific peephole optimizer.

Two hardware gate sets are modeled:

  IBM:     {U1, U2, U3, CNOT}, angles unrestricted
  RIGETTI: {RX at +-pi/2 or +-pi only, RZ at any angle, CZ}

``lower_generic`` performs plain gate-by-gate table substitution with no
optimization.  ``ds_compile`` lowers and then runs a round-robin pipeline of
rewriting passes to a fixpoint; every rewrite preserves the program unitary
up to a global phase, which the report records as a fidelity whenever the
register is small enough to check densely.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .circuits import (
    Gate,
    GateCounts,
    GateKind,
    Program,
    gate_counts,
    gate_matrix,
    make_gate,
    program_unitary,
)

PI = math.pi
HALF_PI = math.pi / 2

ANGLE_MATCH_TOL = 1e-9
ZERO_ANGLE_TOL = 1e-12
COMMUTE_TOL = 1e-12
SYNTH_BRANCH_TOL = 1e-9
EQUIV_CHECK_MAX_QUBITS = 10
MAX_PASS_ROUNDS = 100

_ROTATION_KINDS = (GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.U1)
_SELF_INVERSE_KINDS = (GateKind.H, GateKind.X, GateKind.CNOT, GateKind.CZ)
_DIAGONAL_KINDS = (GateKind.RZ, GateKind.U1, GateKind.Z, GateKind.S, GateKind.SDG)

_X_MATRIX = np.array([[0, 1], [1, 0]], dtype=np.complex128)


class CompileError(RuntimeError):
    """Raised when compilation cannot produce a conformant program."""


class NativeTarget(enum.Enum):
    IBM = "ibm"
    RIGETTI = "rigetti"

    @classmethod
    def from_name(cls, name: str) -> "NativeTarget":
        try:
            return cls(name.lower())
        except ValueError:
            raise CompileError(f"unknown compilation target {name!r}") from None

    def allows(self, gate: Gate) -> bool:
        if self is NativeTarget.IBM:
            return gate.kind in (GateKind.U1, GateKind.U2, GateKind.U3, GateKind.CNOT)
        if gate.kind in (GateKind.RZ, GateKind.CZ):
            return True
        if gate.kind is GateKind.RX:
            return _rx_native(gate.angles[0])
        return False


def conforms(program: Program, target: NativeTarget) -> bool:
    """Whether every gate of the program is native to the target."""
    return all(target.allows(g) for g in program.gates)


def _wrap(angle: float) -> float:
    """Reduce an angle to the branch (-pi, pi]."""
    a = (angle + PI) % (2 * PI) - PI
    return PI if a == -PI else a


def _rx_native(angle: float) -> bool:
    # Membership in {+-pi/2, +-pi} modulo 2*pi, to ANGLE_MATCH_TOL.
    d = angle % (2 * PI)
    return any(abs(d - t) <= ANGLE_MATCH_TOL for t in (HALF_PI, PI, 3 * HALF_PI))


# ---------------------------------------------------------------------------
# Generic lowering


def _zxzxz(theta: float, phi: float, lam: float, q: int) -> list[Gate]:
    # Circuit order; equals U3(theta, phi, lam) up to a global phase.
    return [
        make_gate(GateKind.RZ, [q], [lam]),
        make_gate(GateKind.RX, [q], [HALF_PI]),
        make_gate(GateKind.RZ, [q], [theta + PI]),
        make_gate(GateKind.RX, [q], [HALF_PI]),
        make_gate(GateKind.RZ, [q], [phi + PI]),
    ]


def _lower_gate_ibm(g: Gate) -> list[Gate]:
    k, q = g.kind, g.qubits
    if k in (GateKind.U1, GateKind.U2, GateKind.U3, GateKind.CNOT):
        return [g]
    if k is GateKind.H:
        return [make_gate(GateKind.U2, q, [0.0, PI])]
    if k is GateKind.X:
        return [make_gate(GateKind.U3, q, [PI, 0.0, PI])]
    if k is GateKind.Y:
        return [make_gate(GateKind.U3, q, [PI, HALF_PI, HALF_PI])]
    if k is GateKind.Z:
        return [make_gate(GateKind.U1, q, [PI])]
    if k is GateKind.S:
        return [make_gate(GateKind.U1, q, [HALF_PI])]
    if k is GateKind.SDG:
        return [make_gate(GateKind.U1, q, [-HALF_PI])]
    if k is GateKind.RX:
        return [make_gate(GateKind.U3, q, [g.angles[0], -HALF_PI, HALF_PI])]
    if k is GateKind.RY:
        return [make_gate(GateKind.U3, q, [g.angles[0], 0.0, 0.0])]
    if k is GateKind.RZ:
        return [make_gate(GateKind.U1, q, [g.angles[0]])]
    if k is GateKind.CZ:
        hadamard = make_gate(GateKind.U2, [q[1]], [0.0, PI])
        return [hadamard, make_gate(GateKind.CNOT, q), hadamard]
    raise CompileError(f"no ibm lowering for {k.value}")


def _lower_gate_rigetti(g: Gate) -> list[Gate]:
    k, q = g.kind, g.qubits
    if k in (GateKind.RZ, GateKind.CZ):
        return [g]
    if k is GateKind.RX:
        if _rx_native(g.angles[0]):
            return [g]
        return _zxzxz(g.angles[0], -HALF_PI, HALF_PI, q[0])
    if k is GateKind.H:
        return [
            make_gate(GateKind.RZ, q, [HALF_PI]),
            make_gate(GateKind.RX, q, [HALF_PI]),
            make_gate(GateKind.RZ, q, [HALF_PI]),
        ]
    if k is GateKind.X:
        return [make_gate(GateKind.RX, q, [PI])]
    if k is GateKind.Y:
        return [make_gate(GateKind.RZ, q, [PI]), make_gate(GateKind.RX, q, [PI])]
    if k is GateKind.Z:
        return [make_gate(GateKind.RZ, q, [PI])]
    if k is GateKind.S:
        return [make_gate(GateKind.RZ, q, [HALF_PI])]
    if k is GateKind.SDG:
        return [make_gate(GateKind.RZ, q, [-HALF_PI])]
    if k is GateKind.U1:
        return [make_gate(GateKind.RZ, q, [g.angles[0]])]
    if k is GateKind.RY:
        return [
            make_gate(GateKind.RX, q, [HALF_PI]),
            make_gate(GateKind.RZ, q, [g.angles[0]]),
            make_gate(GateKind.RX, q, [-HALF_PI]),
        ]
    if k is GateKind.U2:
        return _zxzxz(HALF_PI, g.angles[0], g.angles[1], q[0])
    if k is GateKind.U3:
        return _zxzxz(g.angles[0], g.angles[1], g.angles[2], q[0])
    if k is GateKind.CNOT:
        control, target = q
        h_native = [
            make_gate(GateKind.RZ, [target], [HALF_PI]),
            make_gate(GateKind.RX, [target], [HALF_PI]),
            make_gate(GateKind.RZ, [target], [HALF_PI]),
        ]
        return h_native + [make_gate(GateKind.CZ, [control, target])] + h_native
    raise CompileError(f"no rigetti lowering for {k.value}")


def _lower_gates(gates, target: NativeTarget) -> list[Gate]:
    table = _lower_gate_ibm if target is NativeTarget.IBM else _lower_gate_rigetti
    out: list[Gate] = []
    for g in gates:
        out.extend(table(g))
    return out


def lower_generic(program: Program, target: NativeTarget) -> Program:
    """Gate-by-gate substitution into the target set; no optimization."""
    return Program(program.num_qubits, tuple(_lower_gates(program.gates, target)))


# ---------------------------------------------------------------------------
# Peephole passes.  Each pass takes and returns a gate list and must preserve
# the program unitary up to a global phase on any input.  "Adjacent" always
# means: no gate in between touches any of the qubits involved.


def _next_touching(gates: list[Gate], start: int, qubits) -> int | None:
    qs = set(qubits)
    for j in range(start + 1, len(gates)):
        if qs.intersection(gates[j].qubits):
            return j
    return None


def _pass_merge_rotations(gates: list[Gate], target: NativeTarget) -> list[Gate]:
    """Sum adjacent same-kind rotations on the same qubit.

    On the RIGETTI target an RX pair only merges when the summed angle is
    itself native (or zero, which the drop pass then removes); anything else
    would push the gate out of the allowed angle set.
    """
    out = list(gates)
    i = 0
    while i < len(out):
        g = out[i]
        if g.kind in _ROTATION_KINDS:
            j = _next_touching(out, i, g.qubits)
            if j is not None and out[j].kind is g.kind and out[j].qubits == g.qubits:
                total = _wrap(g.angles[0] + out[j].angles[0])
                mergeable = True
                if g.kind is GateKind.RX and target is NativeTarget.RIGETTI:
                    mergeable = abs(total) <= ZERO_ANGLE_TOL or _rx_native(total)
                if mergeable:
                    del out[j]
                    out[i] = make_gate(g.kind, g.qubits, [total])
                    continue
        i += 1
    return out


def _pass_cancel_inverse_pairs(gates: list[Gate], target: NativeTarget) -> list[Gate]:
    """Drop adjacent identical self-inverse pairs (H, X, CNOT, CZ)."""
    out = list(gates)
    i = 0
    while i < len(out):
        g = out[i]
        if g.kind in _SELF_INVERSE_KINDS:
            j = _next_touching(out, i, g.qubits)
            if j is not None and out[j].kind is g.kind:
                same = out[j].qubits == g.qubits or (
                    g.kind is GateKind.CZ and set(out[j].qubits) == set(g.qubits)
                )
                if same:
                    del out[j]
                    del out[i]
                    continue
        i += 1
    return out


def _pass_drop_zero_rotations(gates: list[Gate], target: NativeTarget) -> list[Gate]:
    """Remove rotations whose angle is 0 modulo 2*pi (within 1e-12)."""
    return [
        g
        for g in gates
        if not (g.kind in _ROTATION_KINDS and abs(_wrap(g.angles[0])) <= ZERO_ANGLE_TOL)
    ]


def _is_diagonal(g: Gate) -> bool:
    return g.kind in _DIAGONAL_KINDS


def _commutes_with_x(g: Gate) -> bool:
    if g.kind in (GateKind.X, GateKind.RX):
        return True
    if g.kind in (GateKind.U2, GateKind.U3):
        m = gate_matrix(g)
        return bool(np.max(np.abs(m @ _X_MATRIX - _X_MATRIX @ m)) <= COMMUTE_TOL)
    return False


def _pass_commute_through_entanglers(gates: list[Gate], target: NativeTarget) -> list[Gate]:
    """Move single-qubit gates rightward through entanglers they commute with.

    Diagonal gates (RZ/U1 and friends) slide through CZ on either leg and
    through CNOT controls; x-axis rotations slide through CNOT targets.  The
    drift is rightward only, which both terminates and parks rotations next
    to each other for the merge and fuse passes.
    """
    out = list(gates)
    i = 0
    while i < len(out):
        g = out[i]
        if g.kind.num_qubits == 1:
            j = _next_touching(out, i, g.qubits)
            if j is not None:
                e = out[j]
                q = g.qubits[0]
                movable = False
                if e.kind is GateKind.CZ:
                    movable = _is_diagonal(g)
                elif e.kind is GateKind.CNOT:
                    if q == e.qubits[0]:
                        movable = _is_diagonal(g)
                    else:
                        movable = _commutes_with_x(g)
                if movable:
                    del out[i]
                    out.insert(j, g)
                    continue
        i += 1
    return out


def _zyz_angles(m: np.ndarray) -> tuple[float, float, float]:
    """Euler angles (theta, phi, lam) with m ~ U3(theta, phi, lam).

    theta lies in [0, pi], phi and lam in (-pi, pi].  At the theta = 0 and
    theta = pi degeneracies lam is fixed to 0 and the free angle folds into
    phi.
    """
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    m = m / np.sqrt(det)
    theta = 2.0 * math.atan2(abs(m[1, 0]), abs(m[0, 0]))
    if theta <= SYNTH_BRANCH_TOL:
        return 0.0, _wrap(float(np.angle(m[1, 1]) - np.angle(m[0, 0]))), 0.0
    if theta >= PI - SYNTH_BRANCH_TOL:
        return PI, _wrap(float(np.angle(m[1, 0]) - np.angle(-m[0, 1]))), 0.0
    phi = _wrap(float(np.angle(m[1, 0]) - np.angle(m[0, 0])))
    lam = _wrap(float(np.angle(-m[0, 1]) - np.angle(m[0, 0])))
    return theta, phi, lam


def _resynthesize(m: np.ndarray, target: NativeTarget, q: int) -> list[Gate]:
    """Shortest native single-qubit sequence for a 2x2 unitary, up to phase."""
    theta, phi, lam = _zyz_angles(m)
    if target is NativeTarget.IBM:
        if theta == 0.0 and abs(phi) <= ZERO_ANGLE_TOL:
            return []
        return [make_gate(GateKind.U3, [q], [theta, phi, lam])]
    if theta == 0.0:
        if abs(phi) <= ZERO_ANGLE_TOL:
            return []
        return [make_gate(GateKind.RZ, [q], [phi])]
    if theta == PI:
        out = [make_gate(GateKind.RX, [q], [PI])]
        delta = _wrap(phi + PI)
        if abs(delta) > ZERO_ANGLE_TOL:
            out.append(make_gate(GateKind.RZ, [q], [delta]))
        return out
    out = []
    if abs(_wrap(lam)) > ZERO_ANGLE_TOL:
        out.append(make_gate(GateKind.RZ, [q], [_wrap(lam)]))
    out += [
        make_gate(GateKind.RX, [q], [HALF_PI]),
        make_gate(GateKind.RZ, [q], [_wrap(theta + PI)]),
        make_gate(GateKind.RX, [q], [HALF_PI]),
    ]
    if abs(_wrap(phi + PI)) > ZERO_ANGLE_TOL:
        out.append(make_gate(GateKind.RZ, [q], [_wrap(phi + PI)]))
    return out


def _pass_fuse_single_qubit_runs(gates: list[Gate], target: NativeTarget) -> list[Gate]:
    """Collapse maximal single-qubit runs when a shorter native form exists.

    A run is a wire-contiguous stretch of single-qubit gates on one qubit.
    Its product is re-synthesized (one U3 on IBM, a native ZXZXZ-style
    sequence on RIGETTI) and substituted at the position of the run's first
    gate, but only when that is strictly shorter.
    """
    runs: list[list[int]] = []
    open_runs: dict[int, list[int]] = {}
    for idx, g in enumerate(gates):
        if g.kind.num_qubits == 1:
            open_runs.setdefault(g.qubits[0], []).append(idx)
        else:
            for q in g.qubits:
                run = open_runs.pop(q, None)
                if run:
                    runs.append(run)
    runs.extend(open_runs.values())

    replacements: dict[int, list[Gate]] = {}
    dropped: set[int] = set()
    for run in runs:
        if len(run) < 2:
            continue
        m = np.eye(2, dtype=np.complex128)
        for idx in run:
            m = gate_matrix(gates[idx]) @ m
        synth = _resynthesize(m, target, gates[run[0]].qubits[0])
        if len(synth) < len(run):
            replacements[run[0]] = synth
            dropped.update(run)

    if not replacements:
        return list(gates)
    out: list[Gate] = []
    for idx, g in enumerate(gates):
        if idx in replacements:
            out.extend(replacements[idx])
        elif idx not in dropped:
            out.append(g)
    return out


_PASSES = (
    ("merge_rotations", _pass_merge_rotations),
    ("cancel_inverse_pairs", _pass_cancel_inverse_pairs),
    ("drop_zero_rotations", _pass_drop_zero_rotations),
    ("commute_through_entanglers", _pass_commute_through_entanglers),
    ("fuse_single_qubit_runs", _pass_fuse_single_qubit_runs),
)


# ---------------------------------------------------------------------------
# Reports and drivers


@dataclass(frozen=True)
class CompileReport:
    """What one compilation did, and whether it was verified."""

    target: NativeTarget
    input_counts: GateCounts
    output_counts: GateCounts
    passes_applied: tuple[tuple[str, int], ...]
    equivalence_checked: bool
    equivalence_fidelity: float | None


def _equivalence(a: Program, b: Program) -> tuple[bool, float | None]:
    if a.num_qubits > EQUIV_CHECK_MAX_QUBITS:
        return False, None
    ua = program_unitary(a)
    ub = program_unitary(b)
    fidelity = float(abs(np.trace(ua.conj().T @ ub)) / ua.shape[0])
    return True, fidelity


def _report(
    source: Program,
    compiled: Program,
    target: NativeTarget,
    applied: list[tuple[str, int]],
) -> CompileReport:
    checked, fidelity = _equivalence(source, compiled)
    return CompileReport(
        target=target,
        input_counts=gate_counts(source),
        output_counts=gate_counts(compiled),
        passes_applied=tuple(applied),
        equivalence_checked=checked,
        equivalence_fidelity=fidelity,
    )


def ds_compile(program: Program, target: NativeTarget) -> tuple[Program, CompileReport]:
    """Lower to the target set, then optimize to a fixpoint.

    The pass pipeline runs round-robin; a full round with no change ends the
    loop.  Exceeding MAX_PASS_ROUNDS means some rewrite is cycling, which is
    a bug worth surfacing rather than hiding.
    """
    gates = _lower_gates(program.gates, target)
    applied = [("lower_generic", len(gates) - len(program.gates))]
    for _ in range(MAX_PASS_ROUNDS):
        changed = False
        for name, pass_fn in _PASSES:
            new = pass_fn(gates, target)
            if new != gates:
                applied.append((name, len(new) - len(gates)))
                gates = new
                changed = True
        if not changed:
            break
    else:
        raise CompileError(
            f"pass pipeline failed to reach a fixpoint in {MAX_PASS_ROUNDS} rounds"
        )
    compiled = Program(program.num_qubits, tuple(gates))
    return compiled, _report(program, compiled, target, applied)


def compile_program(
    program: Program, target: NativeTarget, mode: str
) -> tuple[Program, CompileReport]:
    """Dispatch on compile mode: 'generic' lowering or 'domain_specific'."""
    if mode == "generic":
        lowered = lower_generic(program, target)
        report = _report(
            program,
            lowered,
            target,
            [("lower_generic", len(lowered.gates) - len(program.gates))],
        )
        return lowered, report
    if mode == "domain_specific":
        return ds_compile(program, target)
    raise CompileError(f"unknown compile mode {mode!r}")


@dataclass(frozen=True)
class CompilerComparison:
    """Both compilation routes for the same input, with their reports."""

    generic: Program
    generic_report: CompileReport
    ds: Program
    ds_report: CompileReport


def compare_compilers(program: Program, target: NativeTarget) -> CompilerComparison:
    """Run the generic and domain-specific pipelines side by side."""
    generic = lower_generic(program, target)
    generic_report = _report(
        program, generic, target, [("lower_generic", len(generic.gates) - len(program.gates))]
    )
    ds, ds_report = ds_compile(program, target)
    return CompilerComparison(
        generic=generic, generic_report=generic_report, ds=ds, ds_report=ds_report
    )
