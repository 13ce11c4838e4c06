"""Builders for the interpolation circuit blocks and composed networks.

Up-scaling by 2^m x 2^m: the target register starts in uniform
superposition over all target positions. Eight PA blocks copy the high
coordinate bits into four neighbor registers, two increment blocks turn
neighbor 2 into (X+1, Y) and neighbor 3 into (X, Y+1) with an edge clamp,
neighbor 4 copies the incremented coordinates, and four CA/WA rounds
rotate each branch's color qubit by omega_i * theta_{neighbor_i}.

Down-scaling by 2^-m x 2^-m reuses the same PA/increment skeleton on the
high n bits of four source-coordinate registers (the low m bits per axis
live in a shared all-zero register) and replaces CA/WA with QUARTER
blocks that add theta/4 per sampled pixel.

Accumulation: same-axis rotations add, so the default ("accumulate") mode
lands all four weighted rotations on one color wire. The "literal-swap"
mode instead bounces the running total between the color wire and a work
wire with a Swap after every round, costing the four Swap gates the
composed-network totals expect; both modes decode identically.

The increment block needs one flag wire because the clamped map is not
injective on its own register; the composed builders borrow the first
qubit of the last neighbor register (populated only later) and clear the
flag right after use by an extra multi-controlled NOT off the pristine
source coordinate. That fixup is deliberately tagged apart from the
increment proper, whose gate inventory matches the published counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qsim
from .frqi import AngleMap, GrayImage, block_probabilities, image_to_angles
from .oracle import STANDARD, WEIGHT_MODES, weight_set

UP = "up"
DOWN = "down"

ACCUMULATE = "accumulate"
LITERAL_SWAP = "literal-swap"
SWAP_MODES = (ACCUMULATE, LITERAL_SWAP)


@dataclass(frozen=True)
class ScaleSpec:
    """Size exponent n, ratio exponent m, and scaling direction.

    For up-scaling n is the source exponent (2^n -> 2^{n+m}); for
    down-scaling n is the target exponent (2^{n+m} -> 2^n).
    """

    n: int
    m: int
    direction: str

    def __post_init__(self):
        if self.direction not in (UP, DOWN):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be at least 1")


def _span(start, count):
    return tuple(range(start, start + count))


@dataclass(frozen=True)
class UpscaleLayout:
    """Wire map of the up-scaling network.

    target holds |Y'X'> (X' in the low n+m qubits, bit 0 least
    significant); each neighbor register holds an n-bit X then an n-bit Y
    coordinate. work is the shuttle lane of literal-swap mode and doubles
    as nothing else; accumulate mode has no work wire. The increment flag
    is not a dedicated wire: it borrows neighbor 4's first X qubit before
    that register is written.
    """

    n: int
    m: int
    target: tuple[int, ...]
    neighbor_x: tuple[tuple[int, ...], ...]
    neighbor_y: tuple[tuple[int, ...], ...]
    color: int
    work: tuple[int, ...]
    num_qubits: int

    @property
    def target_x(self):
        return self.target[: self.n + self.m]

    @property
    def target_y(self):
        return self.target[self.n + self.m:]

    @property
    def offset_qubits(self):
        """Low m bits of X' then low m bits of Y' (the subpixel offset)."""
        return self.target_x[: self.m] + self.target_y[: self.m]

    def registers(self):
        regs = [qsim.Register("target", self.target)]
        for i in range(4):
            regs.append(qsim.Register(f"n{i + 1}x", self.neighbor_x[i]))
            regs.append(qsim.Register(f"n{i + 1}y", self.neighbor_y[i]))
        regs.append(qsim.Register("color", (self.color,)))
        if self.work:
            regs.append(qsim.Register("work", self.work))
        return tuple(regs)


def upscale_layout(n: int, m: int,
                   swap_mode: str = ACCUMULATE) -> UpscaleLayout:
    if swap_mode not in SWAP_MODES:
        raise ValueError(f"unknown swap mode {swap_mode!r}")
    k = 2 * (n + m)
    target = _span(0, k)
    nx = []
    ny = []
    at = k
    for _ in range(4):
        nx.append(_span(at, n))
        ny.append(_span(at + n, n))
        at += 2 * n
    color = at
    work = (at + 1,) if swap_mode == LITERAL_SWAP else ()
    return UpscaleLayout(n, m, target, tuple(nx), tuple(ny), color, work,
                         at + 1 + len(work))


@dataclass(frozen=True)
class DownscaleLayout:
    """Wire map of the down-scaling network.

    target holds |Y'X'| over 2n qubits. Each source register holds the
    high n bits of its X and Y sample coordinates; the low m bits per
    axis are the shared zero register, which stays |0> throughout and
    completes the 2(n+m)-bit control patterns of the QUARTER rotations.
    """

    n: int
    m: int
    target: tuple[int, ...]
    source_x: tuple[tuple[int, ...], ...]
    source_y: tuple[tuple[int, ...], ...]
    zero_x: tuple[int, ...]
    zero_y: tuple[int, ...]
    color: int
    work: tuple[int, ...]
    num_qubits: int

    @property
    def target_x(self):
        return self.target[: self.n]

    @property
    def target_y(self):
        return self.target[self.n:]

    def source_axis_qubits(self, i, axis):
        """Full (n+m)-bit coordinate wires of source i, low bits first."""
        if axis == "x":
            return self.zero_x + self.source_x[i]
        return self.zero_y + self.source_y[i]

    def registers(self):
        regs = [qsim.Register("target", self.target)]
        for i in range(4):
            regs.append(qsim.Register(f"s{i + 1}x", self.source_x[i]))
            regs.append(qsim.Register(f"s{i + 1}y", self.source_y[i]))
        regs.append(qsim.Register("zerox", self.zero_x))
        regs.append(qsim.Register("zeroy", self.zero_y))
        regs.append(qsim.Register("color", (self.color,)))
        if self.work:
            regs.append(qsim.Register("work", self.work))
        return tuple(regs)


def downscale_layout(n: int, m: int,
                     swap_mode: str = ACCUMULATE) -> DownscaleLayout:
    if swap_mode not in SWAP_MODES:
        raise ValueError(f"unknown swap mode {swap_mode!r}")
    target = _span(0, 2 * n)
    sx = []
    sy = []
    at = 2 * n
    for _ in range(4):
        sx.append(_span(at, n))
        sy.append(_span(at + n, n))
        at += 2 * n
    zero_x = _span(at, m)
    zero_y = _span(at + m, m)
    color = at + 2 * m
    work = (color + 1,) if swap_mode == LITERAL_SWAP else ()
    return DownscaleLayout(n, m, target, tuple(sx), tuple(sy), zero_x,
                           zero_y, color, work, color + 1 + len(work))


# ---------------------------------------------------------------------------
# Block builders


def _pa_gates(source, dest, tag="pa"):
    if len(source) != len(dest):
        raise ValueError("source and dest must have the same width")
    if set(source) & set(dest):
        raise ValueError("source and dest registers overlap")
    return [qsim.cnot(s, d, tag=tag) for s, d in zip(source, dest)]


def build_pa(source, dest) -> qsim.Circuit:
    """Coordinate copy: n CNOTs mapping |x>|0> to |x>|x>."""
    gates = _pa_gates(tuple(source), tuple(dest))
    num = max(max(source), max(dest)) + 1
    regs = (qsim.Register("source", tuple(source)),
            qsim.Register("dest", tuple(dest)))
    return qsim.Circuit(num, gates, regs)


def _omega_gates(reg, flag, tag="omega"):
    """Increment-with-clamp on reg; flag must enter |0>.

    Flag marks the all-ones (clamp) branch, the ripple and final NOT step
    every other value up by one, and the flag fan-out restores the
    all-ones pattern. The flag stays set on the clamp branch; composed
    circuits clear it from a pristine copy of the input (see
    _omega_fixup_gates), which is an extra gate beyond the published
    inventory for the block itself.
    """
    n = len(reg)
    gates = [qsim.mcx([(q, 1) for q in reg], flag, tag=tag)]
    for j in range(n - 1, 0, -1):
        gates.append(qsim.mcx(reg[:j], reg[j], tag=tag))
    gates.append(qsim.gate_not(reg[0], tag=tag))
    gates.extend(qsim.cnot(flag, q, tag=tag) for q in reg)
    return gates


def _omega_fixup_gates(pristine_source, flag, tag="omega-fixup"):
    """Clear the increment flag using an untouched copy of the input."""
    return [qsim.mcx([(q, 1) for q in pristine_source], flag, tag=tag)]


def build_omega(reg, flag=None) -> qsim.Circuit:
    """Clamped increment |X> -> |min(X+1, 2^n-1)> over basis states.

    The map is not injective on reg alone, so the circuit carries one
    flag wire (appended after reg unless given); the flag is left set on
    the clamp branch.
    """
    reg = tuple(reg)
    if flag is None:
        flag = max(reg) + 1
    if flag in reg:
        raise ValueError("flag must not be one of the register qubits")
    gates = _omega_gates(reg, flag)
    regs = (qsim.Register("reg", reg), qsim.Register("flag", (flag,)))
    return qsim.Circuit(max(max(reg), flag) + 1, gates, regs)


def _position_controls(qubits, value):
    return [(q, (value >> j) & 1) for j, q in enumerate(qubits)]


def _ca_gates(neighbor_qubits, color, angles, tag="ca"):
    flat = angles.flat()
    if len(flat) != 1 << len(neighbor_qubits):
        raise ValueError("angle map does not match neighbor register width")
    return [qsim.cry(_position_controls(neighbor_qubits, p), color,
                     2.0 * theta, tag=tag)
            for p, theta in enumerate(flat)]


def build_ca(neighbor_qubits, color, angles: AngleMap) -> qsim.Circuit:
    """Color assignment: one multi-controlled Ry(2*theta_p) per position."""
    gates = _ca_gates(tuple(neighbor_qubits), color, angles)
    num = max(max(neighbor_qubits), color) + 1
    regs = (qsim.Register("neighbor", tuple(neighbor_qubits)),
            qsim.Register("color", (color,)))
    return qsim.Circuit(num, gates, regs)


def _wa_gates(offset_qubits, neighbor_qubits, color, angles, which, m,
              weight_mode=STANDARD, tag="wa"):
    if not 1 <= which <= 4:
        raise ValueError("which must be 1..4")
    flat = angles.flat()
    ratio = 1 << m
    gates = []
    for yo in range(ratio):
        for xo in range(ratio):
            w = weight_set(xo, yo, m, weight_mode).as_floats()[which - 1]
            off = _position_controls(offset_qubits[:m], xo) \
                + _position_controls(offset_qubits[m:], yo)
            for p, theta in enumerate(flat):
                ctrl = off + _position_controls(neighbor_qubits, p)
                gates.append(qsim.cry(ctrl, color, 2.0 * (w - 1.0) * theta,
                                      tag=tag))
    return gates


def build_wa(offset_qubits, neighbor_qubits, color, angles: AngleMap,
             which: int, m: int,
             weight_mode: str = STANDARD) -> qsim.Circuit:
    """Weight assignment for neighbor `which`.

    One rotation per (offset, position) pair, controlled jointly on the
    offset and neighbor registers, turning a branch angle theta_p into
    omega * theta_p by adding (omega - 1) * theta_p. Offset-only controls
    cannot do that, because the correction depends on theta_p.
    """
    gates = _wa_gates(tuple(offset_qubits), tuple(neighbor_qubits), color,
                      angles, which, m, weight_mode)
    num = max(max(offset_qubits), max(neighbor_qubits), color) + 1
    regs = (qsim.Register("offset", tuple(offset_qubits)),
            qsim.Register("neighbor", tuple(neighbor_qubits)),
            qsim.Register("color", (color,)))
    return qsim.Circuit(num, gates, regs)


def _fused_gates(offset_qubits, neighbor_qubits, color, angles, which, m,
                 weight_mode=STANDARD, tag="cawa"):
    """CA and WA of one round fused: Ry(2 * omega * theta_p) directly."""
    if not 1 <= which <= 4:
        raise ValueError("which must be 1..4")
    flat = angles.flat()
    ratio = 1 << m
    gates = []
    for yo in range(ratio):
        for xo in range(ratio):
            w = weight_set(xo, yo, m, weight_mode).as_floats()[which - 1]
            off = _position_controls(offset_qubits[:m], xo) \
                + _position_controls(offset_qubits[m:], yo)
            for p, theta in enumerate(flat):
                ctrl = off + _position_controls(neighbor_qubits, p)
                gates.append(qsim.cry(ctrl, color, 2.0 * w * theta, tag=tag))
    return gates


def _quarter_gates(x_qubits, y_qubits, color, angles, m, tag="quarter"):
    n = len(x_qubits) - m
    src = angles.angles
    gates = []
    for b in range(1 << n):
        ys = b << m
        for a in range(1 << n):
            xs = a << m
            ctrl = (_position_controls(x_qubits, xs)
                    + _position_controls(y_qubits, ys))
            gates.append(qsim.cry(ctrl, color, 0.5 * src[ys, xs], tag=tag))
    return gates


def build_quarter(source_qubits, color, angles: AngleMap,
                  m: int) -> qsim.Circuit:
    """Quarter-value accumulation: Ry(2 * theta_p / 4) per sampled pixel.

    source_qubits holds the X wires (low bits first) then the Y wires of
    one (n+m)-bit-per-axis source coordinate; only positions whose low m
    bits per axis are zero are addressed, one rotation each, controlled
    on the full coordinate pattern.
    """
    source_qubits = tuple(source_qubits)
    half = len(source_qubits) // 2
    gates = _quarter_gates(source_qubits[:half], source_qubits[half:],
                           color, angles, m)
    num = max(max(source_qubits), color) + 1
    regs = (qsim.Register("source", source_qubits),
            qsim.Register("color", (color,)))
    return qsim.Circuit(num, gates, regs)


# ---------------------------------------------------------------------------
# Composed networks


def _shuttle(rounds, color, work, swap_mode, gates_for):
    """Lay out accumulation rounds; literal-swap bounces between lanes."""
    gates = []
    if swap_mode == ACCUMULATE:
        for i in rounds:
            gates.extend(gates_for(i, color))
        return gates
    lanes = (color, work)
    for idx, i in enumerate(rounds):
        gates.extend(gates_for(i, lanes[idx % 2]))
        gates.append(qsim.swap(color, work, tag="swap"))
    return gates


def build_upscale_circuit(image: GrayImage, m: int,
                          swap_mode: str = ACCUMULATE,
                          weight_mode: str = STANDARD,
                          fused: bool = False,
                          budget: int = qsim.DEFAULT_QUBIT_BUDGET):
    """Compose the full up-scaling network; returns (circuit, layout)."""
    if m < 1:
        raise ValueError("ratio exponent must be at least 1")
    if weight_mode not in WEIGHT_MODES:
        raise ValueError(f"unknown weight mode {weight_mode!r}")
    n = image.n
    if n < 1:
        raise ValueError("source image must have at least 2x2 pixels")
    lay = upscale_layout(n, m, swap_mode)
    qsim.check_qubit_budget(lay.num_qubits, budget)
    angles = image_to_angles(image)

    xhigh = lay.target_x[m:]
    yhigh = lay.target_y[m:]
    flag = lay.neighbor_x[3][0]

    gates = []
    # Step 1: neighbor 1 = (X, Y).
    gates += _pa_gates(xhigh, lay.neighbor_x[0])
    gates += _pa_gates(yhigh, lay.neighbor_y[0])
    # Step 2: neighbor 2 = (X+1, Y), neighbor 3 = (X, Y+1), neighbor 4
    # copies the already incremented coordinates. The flag wire is
    # neighbor 4's first X qubit, still |0> here, and is cleared after
    # each increment from the untouched target copy of the coordinate.
    gates += _pa_gates(xhigh, lay.neighbor_x[1])
    gates += _omega_gates(lay.neighbor_x[1], flag)
    gates += _omega_fixup_gates(xhigh, flag)
    gates += _pa_gates(yhigh, lay.neighbor_y[1])
    gates += _pa_gates(xhigh, lay.neighbor_x[2])
    gates += _pa_gates(yhigh, lay.neighbor_y[2])
    gates += _omega_gates(lay.neighbor_y[2], flag)
    gates += _omega_fixup_gates(yhigh, flag)
    gates += _pa_gates(lay.neighbor_x[1], lay.neighbor_x[3])
    gates += _pa_gates(lay.neighbor_y[2], lay.neighbor_y[3])

    # Step 3: four weighted accumulation rounds.
    def round_gates(i, lane):
        nbr = lay.neighbor_x[i - 1] + lay.neighbor_y[i - 1]
        if fused:
            return _fused_gates(lay.offset_qubits, nbr, lane, angles, i, m,
                                weight_mode)
        return (_ca_gates(nbr, lane, angles, tag=f"ca{i}")
                + _wa_gates(lay.offset_qubits, nbr, lane, angles, i, m,
                            weight_mode, tag=f"wa{i}"))

    work = lay.work[0] if lay.work else None
    gates += _shuttle((1, 2, 3, 4), lay.color, work, swap_mode, round_gates)
    return qsim.Circuit(lay.num_qubits, gates, lay.registers()), lay


def build_downscale_circuit(image: GrayImage, m: int,
                            swap_mode: str = ACCUMULATE,
                            budget: int = qsim.DEFAULT_QUBIT_BUDGET):
    """Compose the full down-scaling network; returns (circuit, layout)."""
    if m < 1:
        raise ValueError("ratio exponent must be at least 1")
    n = image.n - m
    if n < 1:
        raise ValueError(
            f"source side {image.side} too small for ratio 2^{m}; "
            f"need at least {1 << (m + 1)}")
    lay = downscale_layout(n, m, swap_mode)
    qsim.check_qubit_budget(lay.num_qubits, budget)
    angles = image_to_angles(image)

    flag = lay.source_x[3][0]
    gates = []
    # Step 1: the four sample coordinates. High bits copy the target
    # coordinate (times 2^m via the shared zero wires); samples 2 and 3
    # carry the clamped +1 step on X and Y respectively, and sample 4
    # copies both incremented axes.
    gates += _pa_gates(lay.target_x, lay.source_x[0])
    gates += _pa_gates(lay.target_y, lay.source_y[0])
    gates += _pa_gates(lay.target_x, lay.source_x[1])
    gates += _omega_gates(lay.source_x[1], flag)
    gates += _omega_fixup_gates(lay.target_x, flag)
    gates += _pa_gates(lay.target_y, lay.source_y[1])
    gates += _pa_gates(lay.target_x, lay.source_x[2])
    gates += _pa_gates(lay.target_y, lay.source_y[2])
    gates += _omega_gates(lay.source_y[2], flag)
    gates += _omega_fixup_gates(lay.target_y, flag)
    gates += _pa_gates(lay.source_x[1], lay.source_x[3])
    gates += _pa_gates(lay.source_y[2], lay.source_y[3])

    # Steps 2-3: four quarter-value rounds.
    def round_gates(i, lane):
        return _quarter_gates(lay.source_axis_qubits(i - 1, "x"),
                              lay.source_axis_qubits(i - 1, "y"),
                              lane, angles, m)

    work = lay.work[0] if lay.work else None
    gates += _shuttle((1, 2, 3, 4), lay.color, work, swap_mode, round_gates)
    return qsim.Circuit(lay.num_qubits, gates, lay.registers()), lay


# ---------------------------------------------------------------------------
# Dense end-to-end pipelines


def _state_buffer(num_qubits, scratch):
    """Zeroed float64 state buffer, reusing scratch when it fits.

    Fifty dense runs re-fault 128 MB of fresh pages each if every run
    allocates; letting a caller hand the same buffer back in avoids that.
    """
    size = 1 << num_qubits
    if scratch is None:
        return np.zeros(size, dtype=np.float64)
    if (scratch.dtype != np.float64 or scratch.ndim != 1
            or scratch.shape[0] < size):
        raise ValueError(f"scratch must be 1-D float64 of length "
                         f">= {size}")
    buf = scratch[:size]
    buf.fill(0.0)
    return buf


def _read_target_angles(buf, num_qubits, target, color, branch_norm):
    blocks = block_probabilities(buf, num_qubits, target, color)
    norms = np.sqrt(blocks[0] + blocks[1])
    if np.any(np.abs(norms - branch_norm) > 1e-6):
        raise AssertionError("per-branch probability drifted; the circuit "
                             "is not basis-controlled as expected")
    side = 1 << (len(target) // 2)
    theta = np.arctan2(np.sqrt(blocks[1]), np.sqrt(blocks[0]))
    return AngleMap(theta.reshape(side, side))


def simulate_upscale_dense(image: GrayImage, m: int,
                           swap_mode: str = ACCUMULATE,
                           weight_mode: str = STANDARD,
                           fused: bool = True,
                           budget: int = qsim.DEFAULT_QUBIT_BUDGET,
                           scratch: np.ndarray | None = None) -> AngleMap:
    """Dense statevector run of the up-scaling network.

    Starts from the uniform superposition over target positions (the
    position share of an encoded target image), runs the composed
    circuit, and reads the per-branch color angle back from the exact
    amplitudes. scratch, if given, is used as the state buffer.
    """
    circuit, lay = build_upscale_circuit(image, m, swap_mode, weight_mode,
                                         fused, budget)
    k = 2 * (lay.n + m)
    buf = _state_buffer(circuit.num_qubits, scratch)
    buf[: 1 << k] = 1.0 / (1 << (lay.n + m))
    qsim.run_gates(buf, circuit.gates)
    return _read_target_angles(buf, circuit.num_qubits, lay.target,
                               lay.color, 1.0 / (1 << (lay.n + m)))


def simulate_downscale_dense(image: GrayImage, m: int,
                             swap_mode: str = ACCUMULATE,
                             budget: int = qsim.DEFAULT_QUBIT_BUDGET,
                             scratch: np.ndarray | None = None) -> AngleMap:
    """Dense statevector run of the down-scaling network."""
    circuit, lay = build_downscale_circuit(image, m, swap_mode, budget)
    buf = _state_buffer(circuit.num_qubits, scratch)
    buf[: 1 << (2 * lay.n)] = 1.0 / (1 << lay.n)
    qsim.run_gates(buf, circuit.gates)
    return _read_target_angles(buf, circuit.num_qubits, lay.target,
                               lay.color, 1.0 / (1 << lay.n))
