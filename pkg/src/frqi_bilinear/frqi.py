"""Conversions between grayscale images, color-angle maps, and FRQI states.

A 2^n x 2^n image maps to one color angle per pixel, theta = (pi/2)*g/255,
and the encoded state is

    (1/2^n) * sum_i (cos theta_i |0> + sin theta_i |1>) |i>

with position index i = Y*2^n + X (row-major, X horizontal, X in the low n
bits). Position qubits occupy indices 0..2n-1 (qubit j carries bit j of i)
and the color qubit sits at index 2n. The preparation circuit is 2n
Hadamards followed by one 2n-controlled Ry(2*theta_i) per position.

Gray to angle is linear and angles_to_image rounds half up, so the
image -> angles -> image round trip is exact for every 8-bit image.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qsim

HALF_PI = math.pi / 2


@dataclass(frozen=True)
class GrayImage:
    """8-bit grayscale raster over a power-of-two square grid."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2 or px.shape[0] != px.shape[1]:
            raise ValueError("image must be a square 2-D array")
        side = px.shape[0]
        if side < 1 or side & (side - 1):
            raise ValueError(f"side {side} is not a power of two")
        if px.dtype != np.uint8:
            as_int = np.asarray(px, dtype=np.int64)
            if np.any(as_int < 0) or np.any(as_int > 255):
                raise ValueError("pixel values must lie in [0, 255]")
            px = as_int.astype(np.uint8)
        else:
            px = px.copy()
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    @property
    def side(self):
        return self.pixels.shape[0]

    @property
    def n(self):
        return self.side.bit_length() - 1


@dataclass(frozen=True)
class AngleMap:
    """Per-pixel color angles theta in [0, pi/2] over a square grid."""

    angles: np.ndarray

    def __post_init__(self):
        ang = np.asarray(self.angles, dtype=np.float64)
        if ang.ndim != 2 or ang.shape[0] != ang.shape[1]:
            raise ValueError("angle map must be a square 2-D array")
        side = ang.shape[0]
        if side < 1 or side & (side - 1):
            raise ValueError(f"side {side} is not a power of two")
        if np.any(ang < -qsim.ATOL) or np.any(ang > HALF_PI + qsim.ATOL):
            raise ValueError("angles must lie in [0, pi/2]")
        # Float accumulation may overshoot the endpoints by an ulp or two;
        # snap back so the stored invariant holds exactly.
        ang = np.clip(ang, 0.0, HALF_PI)
        ang.flags.writeable = False
        object.__setattr__(self, "angles", ang)

    @property
    def side(self):
        return self.angles.shape[0]

    @property
    def n(self):
        return self.side.bit_length() - 1

    def flat(self):
        """Angles in position order i = Y*2^n + X."""
        return self.angles.ravel()


@dataclass(frozen=True)
class FrqiLayout:
    """Wire layout of an encoded image: 2n position qubits plus one color.

    Qubit j carries bit j of the position index; the color qubit sits on
    top. This packed layout is the only one the codec reads and writes.
    """

    n: int

    @property
    def position_qubits(self):
        return tuple(range(2 * self.n))

    @property
    def color_qubit(self):
        return 2 * self.n

    @property
    def num_qubits(self):
        return 2 * self.n + 1


def image_to_angles(image: GrayImage) -> AngleMap:
    """Linear gray-to-angle map theta = (pi/2) * g / 255."""
    return AngleMap(HALF_PI * image.pixels.astype(np.float64) / 255.0)


def angles_to_image(angles: AngleMap) -> GrayImage:
    """Quantize angles back to gray levels, rounding half up.

    Interpolated angles are rationals in gray units with power-of-two
    denominators, so exact half-boundaries occur routinely; different
    computation routes reach them with a few ulps of noise in either
    direction. The 1e-9 guard swallows that noise and sends exact halves
    up on every route. Legitimate values never sit within the guard of a
    boundary (the nearest rationals are 1/16 gray away).
    """
    g = np.floor(angles.angles * (255.0 / HALF_PI) + 0.5 + 1e-9)
    return GrayImage(np.clip(g, 0.0, 255.0).astype(np.uint8))


def encode_frqi(angles: AngleMap, budget=qsim.DEFAULT_QUBIT_BUDGET):
    """Encode an angle map; returns (state, preparation circuit).

    The state is built directly from the closed form; the returned circuit
    (2n Hadamards, then one multi-controlled Ry(2*theta_i) per position,
    zero-polarity controls matching the 0 bits of i) prepares the same
    state from |0...0> and is validated against it by the test suite.
    """
    n = angles.n
    layout = FrqiLayout(n)
    q = layout.num_qubits
    flat = angles.flat()

    scale = 1.0 / (1 << n)
    amps = np.empty(1 << q, dtype=np.complex128)
    amps[: 1 << (2 * n)] = scale * np.cos(flat)
    amps[1 << (2 * n):] = scale * np.sin(flat)
    state = qsim.QuantumState.from_amplitudes(amps, budget=budget)

    gates = [qsim.gate_h(j, tag="prep") for j in layout.position_qubits]
    for i, theta in enumerate(flat):
        controls = [(j, (i >> j) & 1) for j in layout.position_qubits]
        gates.append(qsim.cry(controls, layout.color_qubit, 2.0 * theta,
                              tag="prep"))
    registers = (qsim.Register("position", layout.position_qubits),
                 qsim.Register("color", (layout.color_qubit,)))
    circuit = qsim.Circuit(q, gates, registers)
    return state, circuit


def block_probabilities(amplitudes, num_qubits, position_qubits, color_qubit):
    """Marginal probabilities p[c, i] over (color, position) blocks.

    Sums squared magnitudes over every qubit outside the block, reading i
    from position_qubits (element 0 = bit 0 of i). Works on any state, so
    the scaling pipelines reuse it to read their target register.
    """
    amplitudes = np.asarray(amplitudes)
    position_qubits = tuple(position_qubits)
    k = len(position_qubits)
    if (position_qubits == tuple(range(k)) and color_qubit >= k
            and amplitudes.dtype != np.complex128):
        # The pipelines keep positions in the low bits and a real state;
        # squaring and reducing in one einsum pass avoids a buffer-sized
        # temporary, which matters at 2^24 amplitudes.
        arr = amplitudes.reshape(1 << (num_qubits - 1 - color_qubit), 2,
                                 1 << (color_qubit - k), 1 << k)
        return np.einsum("abcd,abcd->bd", arr, arr)
    if amplitudes.dtype == np.complex128:
        probs = amplitudes.real ** 2 + amplitudes.imag ** 2
    else:
        probs = amplitudes * amplitudes
    arr = probs.reshape([2] * num_qubits)
    # Row-major reshape puts qubit j on axis num_qubits-1-j.
    front = [num_qubits - 1 - color_qubit]
    front += [num_qubits - 1 - p for p in reversed(position_qubits)]
    rest = [a for a in range(num_qubits) if a not in front]
    arr = arr.transpose(front + rest)
    return arr.reshape(2, 1 << k, -1).sum(axis=-1)


def _angles_from_blocks(blocks):
    n = (blocks.shape[1].bit_length() - 1) // 2
    theta = np.arctan2(np.sqrt(blocks[1]), np.sqrt(blocks[0]))
    return AngleMap(theta.reshape(1 << n, 1 << n))


def decode_exact(state: qsim.QuantumState, layout: FrqiLayout) -> AngleMap:
    """Read angles from exact amplitudes: theta = atan2(|a1|, |a0|)."""
    if state.num_qubits != layout.num_qubits:
        raise ValueError(
            f"state has {state.num_qubits} qubits, layout wants "
            f"{layout.num_qubits}")
    blocks = block_probabilities(state.amplitudes, state.num_qubits,
                                 layout.position_qubits, layout.color_qubit)
    norms = np.sqrt(blocks[0] + blocks[1])
    want = 1.0 / (1 << layout.n)
    if np.any(np.abs(norms - want) > 1e-6):
        raise ValueError("per-position block norms are not uniform; "
                         "state is not an encoded image for this layout")
    return _angles_from_blocks(blocks)


def decode_sampled(state: qsim.QuantumState, layout: FrqiLayout,
                   shots: int, seed=None):
    """Estimate angles from measurement counts.

    Returns (angles, sampled): theta_i = asin(sqrt(c1/(c0+c1))) from the
    counts at position i, and sampled marks positions that were hit at
    all; missed positions report theta = 0.
    """
    if shots < 1:
        raise ValueError("shots must be at least 1")
    if state.num_qubits != layout.num_qubits:
        raise ValueError("state does not match layout")
    rng = np.random.default_rng(seed)
    probs = state.probabilities()
    counts = rng.multinomial(shots, probs / probs.sum())
    # Color qubit is the top bit, so the two halves are the c=0/c=1 counts.
    blocks = counts.astype(np.float64).reshape(2, -1)
    tot = blocks[0] + blocks[1]
    sampled = tot > 0
    frac = np.divide(blocks[1], tot, out=np.zeros_like(tot), where=sampled)
    theta = np.arcsin(np.sqrt(frac))
    side = 1 << layout.n
    return (AngleMap(theta.reshape(side, side)),
            sampled.reshape(side, side))
