"""Classical reference arithmetic for the scaling pipelines.

Everything here is deliberately plain: scalar loops, explicit clamps, exact
rational weights. The point is to be an independent check on the circuit
and structured routes, so this module shares no code with those beyond the
gray/angle codec.

All interpolation runs in the angle domain and quantizes once at the end,
mirroring the quantum pipeline, which rotates color qubits mid-circuit and
only meets gray levels again at readout. A gray-domain variant would differ
by up to one gray level because of the different quantization point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .frqi import AngleMap, GrayImage, angles_to_image, image_to_angles

STANDARD = "standard"
PAPER_LITERAL = "paper-literal"
WEIGHT_MODES = (STANDARD, PAPER_LITERAL)


@dataclass(frozen=True)
class WeightSet:
    """Weights of the four neighbors for one subpixel offset (x, y).

    w1 weighs the floor neighbor (X, Y), w2 its right neighbor (X+1, Y),
    w3 the one below (X, Y+1), w4 the diagonal (X+1, Y+1). Standard mode
    is the distance-product bilinear set and sums to exactly 1; the
    paper-literal mode keeps w2 and w3 as single-axis fractions, which
    does not sum to 1 and exists only for side-by-side comparison.
    """

    w1: Fraction
    w2: Fraction
    w3: Fraction
    w4: Fraction
    x: int
    y: int
    m: int
    mode: str

    def __post_init__(self):
        for w in (self.w1, self.w2, self.w3, self.w4):
            if not 0 <= w <= 1:
                raise ValueError(f"weight {w} outside [0, 1]")
        if self.mode == STANDARD and self.w1 + self.w2 + self.w3 + self.w4 != 1:
            raise ValueError("standard-mode weights must sum to 1")

    def as_floats(self):
        # Denominators are powers of two and numerators are tiny, so the
        # conversion is exact and every route sees identical weights.
        return (float(self.w1), float(self.w2), float(self.w3),
                float(self.w4))


def weight_set(x: int, y: int, m: int, mode: str = STANDARD) -> WeightSet:
    """Bilinear weights for subpixel offset (x, y) at ratio 2^m."""
    if mode not in WEIGHT_MODES:
        raise ValueError(f"unknown weight mode {mode!r}")
    side = 1 << m
    if not (0 <= x < side and 0 <= y < side):
        raise ValueError(f"offsets ({x}, {y}) outside [0, {side})")
    denom = side * side
    w1 = Fraction((side - x) * (side - y), denom)
    w4 = Fraction(x * y, denom)
    if mode == STANDARD:
        w2 = Fraction(x * (side - y), denom)
        w3 = Fraction((side - x) * y, denom)
    else:
        w2 = Fraction(side - x, side)
        w3 = Fraction(side - y, side)
    return WeightSet(w1, w2, w3, w4, x, y, m, mode)


def fold_angle(t: float) -> float:
    """Map an accumulated angle back into [0, pi/2].

    Reading an angle from squared amplitudes loses quadrant signs, so a sum
    driven past pi/2 (possible only with paper-literal weights) comes back
    as atan2(|sin t|, |cos t|). The classical routes apply the same fold so
    all routes agree.
    """
    return math.atan2(abs(math.sin(t)), abs(math.cos(t)))


def bilinear_upscale_angles(angles: AngleMap, m: int,
                            mode: str = STANDARD) -> AngleMap:
    """Weighted four-neighbor sum in the angle domain, edge-clamped."""
    if m < 0:
        raise ValueError("ratio exponent must be non-negative")
    src = angles.angles
    side = angles.side
    out_side = side << m
    low = (1 << m) - 1
    out = np.empty((out_side, out_side), dtype=np.float64)
    for ty in range(out_side):
        sy = ty >> m
        sy1 = min(sy + 1, side - 1)
        yo = ty & low
        for tx in range(out_side):
            sx = tx >> m
            sx1 = min(sx + 1, side - 1)
            xo = tx & low
            w1, w2, w3, w4 = weight_set(xo, yo, m, mode).as_floats()
            t = (w1 * src[sy, sx] + w2 * src[sy, sx1]
                 + w3 * src[sy1, sx] + w4 * src[sy1, sx1])
            if mode == PAPER_LITERAL:
                t = fold_angle(t)
            out[ty, tx] = t
    return AngleMap(out)


def bilinear_upscale(image: GrayImage, m: int,
                     mode: str = STANDARD) -> GrayImage:
    """Bilinear 2^m x 2^m up-scaling with a single final quantization."""
    return angles_to_image(bilinear_upscale_angles(image_to_angles(image),
                                                   m, mode))


def nearest_upscale(image: GrayImage, m: int) -> GrayImage:
    """Each target pixel copies source (floor(X'/2^m), floor(Y'/2^m))."""
    if m < 0:
        raise ValueError("ratio exponent must be non-negative")
    src = image.pixels
    out_side = image.side << m
    out = np.empty((out_side, out_side), dtype=np.uint8)
    for ty in range(out_side):
        for tx in range(out_side):
            out[ty, tx] = src[ty >> m, tx >> m]
    return GrayImage(out)


def average_downscale_angles(angles: AngleMap, m: int) -> AngleMap:
    """Quarter-sum of the four sampled pixels per target, edge-clamped."""
    if m < 1:
        raise ValueError("ratio exponent must be at least 1")
    src = angles.angles
    out_side = angles.side >> m
    if out_side < 2:
        raise ValueError(
            f"source side {angles.side} too small for ratio 2^{m}; "
            f"need at least {1 << (m + 1)}")
    out = np.empty((out_side, out_side), dtype=np.float64)
    for ty in range(out_side):
        y1 = ty << m
        y2 = min(ty + 1, out_side - 1) << m
        for tx in range(out_side):
            x1 = tx << m
            x2 = min(tx + 1, out_side - 1) << m
            out[ty, tx] = 0.25 * (src[y1, x1] + src[y1, x2]
                                  + src[y2, x1] + src[y2, x2])
    return AngleMap(out)


def average_downscale(image: GrayImage, m: int) -> GrayImage:
    """Sample-average 2^-m x 2^-m down-scaling, quantized once."""
    return angles_to_image(average_downscale_angles(image_to_angles(image),
                                                    m))


def anchor_subsample(image: GrayImage, m: int) -> GrayImage:
    """Keep every 2^m-th pixel starting at (0, 0).

    This is the corpus-preparation step for scaling experiments: shrink a
    reference image so that up-scaling it by 2^m lands back on the
    reference grid. nearest_upscale followed by anchor_subsample is the
    identity on the small image.
    """
    if m < 0:
        raise ValueError("need m >= 0")
    if m == 0:
        return image
    step = 1 << m
    if image.side < 2 * step:
        raise ValueError(
            f"source side {image.side} too small for ratio 2^{m}; "
            f"need at least {2 * step}")
    return GrayImage(image.pixels[::step, ::step].copy())
