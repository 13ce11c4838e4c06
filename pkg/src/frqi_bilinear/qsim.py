"""Dense statevector simulation for the image-scaling gate set.

Gate set: NOT, H, CNOT, Toffoli, k-controlled NOT, Ry, controlled Ry, Swap.
Controls carry a polarity so a gate can fire on |0> as well as on |1>.
Qubit k is bit k of the flat amplitude index (qubit 0 least significant).

Every matrix in the set is real orthogonal, so a state whose imaginary part
is exactly zero stays real under any circuit; apply_circuit runs such states
through a float64 fast path and converts back to complex at the end.

Gate costing follows the CNOT-as-unit convention: CNOT 1, Toffoli 6, Swap 3,
k-controlled NOT 12k-11, singly controlled Ry 2, multiply controlled Ry
priced through its decomposition. NOT, H and plain Ry act on a single qubit;
they are counted but excluded from the CNOT-equivalent total.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels

# Gate kinds.
NOT = "not"
H = "h"
CNOT = "cnot"
TOFFOLI = "toffoli"
KCNOT = "kcnot"
RY = "ry"
CRY = "cry"
SWAP = "swap"

KINDS = (NOT, H, CNOT, TOFFOLI, KCNOT, RY, CRY, SWAP)

DEFAULT_QUBIT_BUDGET = 24
ATOL = 1e-9


def _norm_controls(controls):
    """Accept qubit indices or (qubit, polarity) pairs; return pair tuples."""
    out = []
    for c in controls:
        if isinstance(c, tuple):
            q, pol = c
        else:
            q, pol = c, 1
        if pol not in (0, 1):
            raise ValueError(f"control polarity must be 0 or 1, got {pol!r}")
        out.append((int(q), int(pol)))
    return tuple(out)


@dataclass(frozen=True)
class Gate:
    """One gate: kind, target qubit(s), (qubit, polarity) controls, angle.

    The angle field is the full Ry rotation angle phi with matrix
    [[cos(phi/2), -sin(phi/2)], [sin(phi/2), cos(phi/2)]]; it is meaningful
    only for RY and CRY. The tag labels which circuit block a gate belongs
    to, so audits can attribute costs per block.
    """

    kind: str
    targets: tuple[int, ...]
    controls: tuple[tuple[int, int], ...] = ()
    angle: float = 0.0
    tag: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        want_targets = 2 if self.kind == SWAP else 1
        if len(self.targets) != want_targets:
            raise ValueError(f"{self.kind} takes {want_targets} target(s)")
        nctl = len(self.controls)
        limits = {NOT: (0, 0), H: (0, 0), RY: (0, 0), SWAP: (0, 0),
                  CNOT: (1, 1), TOFFOLI: (2, 2), KCNOT: (3, None),
                  CRY: (1, None)}
        lo, hi = limits[self.kind]
        if nctl < lo or (hi is not None and nctl > hi):
            raise ValueError(f"{self.kind} with {nctl} controls")
        qubits = list(self.targets) + [q for q, _ in self.controls]
        if len(set(qubits)) != len(qubits):
            raise ValueError("targets and controls must be distinct qubits")
        if min(qubits) < 0:
            raise ValueError("negative qubit index")
        if self.angle != 0.0 and self.kind not in (RY, CRY):
            raise ValueError(f"{self.kind} takes no angle")

    def qubits(self):
        return tuple(self.targets) + tuple(q for q, _ in self.controls)


def gate_not(q, tag=""):
    return Gate(NOT, (int(q),), tag=tag)


def gate_h(q, tag=""):
    return Gate(H, (int(q),), tag=tag)


def cnot(control, target, tag=""):
    return Gate(CNOT, (int(target),), _norm_controls([control]), tag=tag)


def toffoli(c1, c2, target, tag=""):
    return Gate(TOFFOLI, (int(target),), _norm_controls([c1, c2]), tag=tag)


def mcx(controls, target, tag=""):
    """Controlled NOT with any number of controls; kind picked by count."""
    ctl = _norm_controls(controls)
    kind = {0: NOT, 1: CNOT, 2: TOFFOLI}.get(len(ctl), KCNOT)
    return Gate(kind, (int(target),), ctl, tag=tag)


def ry(q, angle, tag=""):
    return Gate(RY, (int(q),), angle=float(angle), tag=tag)


def cry(controls, target, angle, tag=""):
    ctl = _norm_controls(controls)
    if not ctl:
        return ry(target, angle, tag=tag)
    return Gate(CRY, (int(target),), ctl, angle=float(angle), tag=tag)


def swap(a, b, tag=""):
    return Gate(SWAP, (int(a), int(b)), tag=tag)


@dataclass(frozen=True)
class Register:
    """Named group of qubit indices inside a circuit."""

    name: str
    qubits: tuple[int, ...]


@dataclass(frozen=True)
class Circuit:
    """Immutable gate list over a fixed qubit count, with named registers."""

    num_qubits: int
    gates: tuple[Gate, ...]
    registers: tuple[Register, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "registers", tuple(self.registers))
        for g in self.gates:
            if max(g.qubits()) >= self.num_qubits:
                raise ValueError(
                    f"gate {g.kind} on qubits {g.qubits()} exceeds "
                    f"{self.num_qubits}-qubit circuit")
        seen = set()
        for r in self.registers:
            for q in r.qubits:
                if q in seen:
                    raise ValueError(f"register {r.name} overlaps another")
                if not 0 <= q < self.num_qubits:
                    raise ValueError(f"register {r.name} out of range")
                seen.add(q)

    def register(self, name):
        for r in self.registers:
            if r.name == name:
                return r.qubits
        raise KeyError(name)


def check_qubit_budget(num_qubits, budget):
    if num_qubits > budget:
        raise ValueError(
            f"{num_qubits} qubits exceeds the configured budget of {budget}")
    # Hard stop well before the host would start swapping: the simulator
    # needs the state plus about two working copies.
    try:
        phys = os.sysconf("SC_PHYS_PAGES") * os.sysconf("SC_PAGE_SIZE")
    except (ValueError, OSError, AttributeError):
        phys = None
    if phys is not None and 3 * 16 * (1 << num_qubits) > phys:
        raise ValueError(
            f"{num_qubits} qubits will not fit in physical memory")


@dataclass(frozen=True)
class QuantumState:
    """Immutable dense statevector: 2**num_qubits complex amplitudes."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = self.amplitudes
        if amps.shape != (1 << self.num_qubits,):
            raise ValueError("amplitude length must be 2**num_qubits")
        amps.flags.writeable = False

    @staticmethod
    def zero(num_qubits, budget=DEFAULT_QUBIT_BUDGET):
        return QuantumState.basis(num_qubits, 0, budget=budget)

    @staticmethod
    def basis(num_qubits, index, budget=DEFAULT_QUBIT_BUDGET):
        check_qubit_budget(num_qubits, budget)
        amps = np.zeros(1 << num_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return QuantumState(num_qubits, amps)

    @staticmethod
    def from_amplitudes(amps, budget=DEFAULT_QUBIT_BUDGET):
        amps = np.asarray(amps, dtype=np.complex128)
        num_qubits = int(amps.shape[0]).bit_length() - 1
        if 1 << num_qubits != amps.shape[0]:
            raise ValueError("amplitude length must be a power of two")
        check_qubit_budget(num_qubits, budget)
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > ATOL:
            raise ValueError(f"state norm {norm} is not 1")
        return QuantumState(num_qubits, amps.copy())

    def probabilities(self):
        return np.abs(self.amplitudes) ** 2


def _gate_masks(gate):
    """Fixed-bit mask (controls plus targets) and the on-1 control mask."""
    fixed = 0
    ctrl_val = 0
    for q, pol in gate.controls:
        fixed |= 1 << q
        if pol:
            ctrl_val |= 1 << q
    for t in gate.targets:
        fixed |= 1 << t
    return fixed, ctrl_val


def run_gates(buf, gates):
    """Apply gates in place to a flat float64 or complex128 buffer."""
    size = buf.shape[0]
    for g in gates:
        if g.kind in (RY, CRY):
            if g.angle == 0.0:
                continue
            fixed, ctrl_val = _gate_masks(g)
            pairs = size >> (len(g.controls) + 1)
            half = 0.5 * g.angle
            _kernels.rot_pairs(buf, fixed, ctrl_val, 1 << g.targets[0],
                               pairs, math.cos(half), math.sin(half))
        elif g.kind in (NOT, CNOT, TOFFOLI, KCNOT):
            fixed, ctrl_val = _gate_masks(g)
            pairs = size >> (len(g.controls) + 1)
            _kernels.flip_pairs(buf, fixed, ctrl_val, 1 << g.targets[0],
                                pairs)
        elif g.kind == H:
            fixed, ctrl_val = _gate_masks(g)
            _kernels.had_pairs(buf, fixed, ctrl_val, 1 << g.targets[0],
                               size >> (len(g.controls) + 1))
        elif g.kind == SWAP:
            fixed, ctrl_val = _gate_masks(g)
            a, b = g.targets
            _kernels.xchg_pairs(buf, fixed, ctrl_val, 1 << a, 1 << b,
                                size >> (len(g.controls) + 2))
        else:  # pragma: no cover - kinds are closed
            raise ValueError(f"unknown gate kind {g.kind!r}")


def apply_circuit(state: QuantumState, circuit: Circuit) -> QuantumState:
    """Run a circuit on a state; returns a new state, input untouched."""
    if state.num_qubits != circuit.num_qubits:
        raise ValueError(
            f"state has {state.num_qubits} qubits, circuit wants "
            f"{circuit.num_qubits}")
    amps = state.amplitudes
    real_input = not np.any(amps.imag)
    buf = amps.real.copy() if real_input else amps.copy()
    run_gates(buf, circuit.gates)
    out = buf.astype(np.complex128) if real_input else buf
    norm = np.linalg.norm(out)
    if abs(norm - 1.0) > ATOL:
        raise AssertionError(f"norm drifted to {norm}")
    return QuantumState(state.num_qubits, out)


# ---------------------------------------------------------------------------
# Decomposition to the basic set {NOT, CNOT, Toffoli, Ry, singly controlled Ry}


def _conjugate_zero_controls(gate):
    """Rewrite zero-polarity controls as NOT-conjugated plain controls."""
    wraps = [gate_not(q, tag=gate.tag)
             for q, pol in gate.controls if pol == 0]
    if not wraps:
        return [], gate, []
    plain = _norm_controls([q for q, _ in gate.controls])
    fixed = replace(gate, controls=plain)
    return wraps, fixed, list(reversed(wraps))


def _expand_mcx(controls, target, work, tag):
    """AND-chain network: 2(k-1) Toffolis around one CNOT, work restored."""
    k = len(controls)
    if k - 1 > len(work):
        raise ValueError(
            f"{k}-controlled NOT needs {k - 1} work qubits, got {len(work)}")
    chain = [toffoli(controls[0], controls[1], work[0], tag=tag)]
    for j in range(2, k):
        chain.append(toffoli(work[j - 2], controls[j], work[j - 1], tag=tag))
    return chain + [cnot(work[k - 2], target, tag=tag)] + chain[::-1]


def decompose_gate(gate: Gate, work=()) -> list[Gate]:
    """Expand one gate into {NOT, CNOT, Toffoli, Ry, singly controlled Ry}.

    Zero-polarity controls come out NOT-conjugated. k-controlled NOTs use
    the AND-chain over k-1 clean work qubits (restored on exit); multiply
    controlled Ry splits into two half-angle singly controlled Ry around two
    (k-1)-controlled NOTs on the target. ``work`` must be disjoint from the
    gate's own qubits and is only consumed by gates that need it.
    """
    used = set(gate.qubits())
    if used & set(work):
        raise ValueError("work qubits overlap the gate")
    pre, g, post = _conjugate_zero_controls(gate)
    if g.kind in (NOT, H, CNOT, TOFFOLI, RY):
        core = [g]
    elif g.kind == CRY and len(g.controls) == 1:
        core = [g]
    elif g.kind == SWAP:
        a, b = g.targets
        core = [cnot(a, b, tag=g.tag), cnot(b, a, tag=g.tag),
                cnot(a, b, tag=g.tag)]
    elif g.kind == KCNOT:
        ctl = [q for q, _ in g.controls]
        core = _expand_mcx(ctl, g.targets[0], tuple(work), g.tag)
    else:  # CRY with two or more controls
        ctl = [q for q, _ in g.controls]
        t = g.targets[0]
        inner = mcx(ctl[:-1], t, tag=g.tag)
        core = ([cry([ctl[-1]], t, g.angle / 2, tag=g.tag)]
                + decompose_gate(inner, work)
                + [cry([ctl[-1]], t, -g.angle / 2, tag=g.tag)]
                + decompose_gate(inner, work))
    return pre + core + post


# ---------------------------------------------------------------------------
# CNOT-equivalent costing


@dataclass(frozen=True)
class CostReport:
    """Per-class gate counts plus the CNOT-equivalent total.

    counts keys: "not", "h", "ry", "swap", "cnot", "toffoli", "kcnot[k]",
    "cry[k]". The total prices multi-qubit gates only; plain NOT, H and Ry
    are tallied (NOT also in not_count) but excluded. per_tag breaks the
    total down by gate tag. paper_formula_value and discrepancy_notes are
    filled by the complexity auditor.
    """

    counts: dict
    cnot_equivalent_total: int
    not_count: int
    per_tag: dict
    paper_formula_value: int | None = None
    discrepancy_notes: tuple[str, ...] = ()


def _flip_weight(k):
    """CNOT-equivalents of a NOT with k plain controls."""
    if k <= 0:
        return 0
    if k == 1:
        return 1
    if k == 2:
        return 6
    return 12 * k - 11


def gate_weight(gate: Gate) -> int:
    """CNOT-equivalent weight of one gate; single-qubit gates weigh zero."""
    if gate.kind in (NOT, H, RY):
        return 0
    if gate.kind == SWAP:
        return 3
    if gate.kind in (CNOT, TOFFOLI, KCNOT):
        return _flip_weight(len(gate.controls))
    # Controlled Ry: priced via two half-angle singly controlled Ry plus
    # two (k-1)-controlled NOTs, consistent with decompose_gate.
    k = len(gate.controls)
    if k == 1:
        return 2
    return 4 + 2 * _flip_weight(k - 1)


def _class_key(gate):
    if gate.kind == KCNOT:
        return f"kcnot[{len(gate.controls)}]"
    if gate.kind == CRY:
        return f"cry[{len(gate.controls)}]"
    return gate.kind


def cnot_equivalent_cost(gates) -> CostReport:
    """Count gate classes and total CNOT-equivalents for a gate sequence."""
    if isinstance(gates, Circuit):
        gates = gates.gates
    counts = {}
    per_tag = {}
    total = 0
    nots = 0
    for g in gates:
        key = _class_key(g)
        counts[key] = counts.get(key, 0) + 1
        w = gate_weight(g)
        total += w
        per_tag[g.tag] = per_tag.get(g.tag, 0) + w
        if g.kind == NOT:
            nots += 1
    return CostReport(counts=counts, cnot_equivalent_total=total,
                      not_count=nots, per_tag=per_tag)
