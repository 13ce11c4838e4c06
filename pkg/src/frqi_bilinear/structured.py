"""Angle-per-position simulation of the scaling circuits.

Every gate in the interpolation networks is controlled on computational
basis values of position registers and only ever rotates a color qubit, so
within each target branch the state stays (cos t |0> + sin t |1>)|positions>
for some accumulated angle t. Tracking that one angle per target position
reproduces the dense simulation exactly while scaling with pixel count
instead of 2^qubits, which is what makes full-size runs (512 -> 2048 and
beyond) possible. The structured state is therefore just an AngleMap.

Weight arithmetic is kept bit-identical to the classical reference: the
per-axis factors are exact dyadic rationals, products and sums run in the
same order, so the two routes agree to the last float bit and the circuit
route lands within ~1e-15 of both.
"""

from __future__ import annotations

import numpy as np

from .frqi import AngleMap
from .oracle import PAPER_LITERAL, STANDARD, WEIGHT_MODES


def upscale_neighbors(tx: int, ty: int, n: int, m: int):
    """Clamped neighbor coordinates (X,Y), (X+1,Y), (X,Y+1), (X+1,Y+1)."""
    side = 1 << n
    sx = tx >> m
    sy = ty >> m
    sx1 = min(sx + 1, side - 1)
    sy1 = min(sy + 1, side - 1)
    return ((sx, sy), (sx1, sy), (sx, sy1), (sx1, sy1))


def downscale_sources(tx: int, ty: int, n: int, m: int):
    """Sampled source coordinates for down-scale target (tx, ty).

    The four samples sit at the target grid points scaled up by 2^m, with
    the +1 step clamped at the last target index.
    """
    side = 1 << n
    x1 = tx << m
    y1 = ty << m
    x2 = min(tx + 1, side - 1) << m
    y2 = min(ty + 1, side - 1) << m
    return ((x1, y1), (x2, y1), (x1, y2), (x2, y2))


def upscale_structured(angles: AngleMap, m: int,
                       weight_mode: str = STANDARD) -> AngleMap:
    """Per-target weighted neighbor sum, vectorized over the whole grid."""
    if m < 0:
        raise ValueError("ratio exponent must be non-negative")
    if weight_mode not in WEIGHT_MODES:
        raise ValueError(f"unknown weight mode {weight_mode!r}")
    src = angles.angles
    side = angles.side
    out_side = side << m
    ratio = 1 << m

    coords = np.arange(out_side)
    lo = coords >> m
    hi = np.minimum(lo + 1, side - 1)
    off = coords & (ratio - 1)
    # (ratio - off)/ratio and off/ratio are exact dyadic floats, matching
    # the rational weights of the reference route bit for bit.
    near = (ratio - off) / ratio
    far = off / ratio

    t1 = src[lo[:, None], lo[None, :]]
    t2 = src[lo[:, None], hi[None, :]]
    t3 = src[hi[:, None], lo[None, :]]
    t4 = src[hi[:, None], hi[None, :]]

    w1 = near[:, None] * near[None, :]
    w4 = far[:, None] * far[None, :]
    if weight_mode == STANDARD:
        w2 = near[:, None] * far[None, :]
        w3 = far[:, None] * near[None, :]
    else:
        w2 = np.broadcast_to(near[None, :], (out_side, out_side))
        w3 = np.broadcast_to(near[:, None], (out_side, out_side))

    out = w1 * t1 + w2 * t2 + w3 * t3 + w4 * t4
    if weight_mode == PAPER_LITERAL:
        out = np.arctan2(np.abs(np.sin(out)), np.abs(np.cos(out)))
    return AngleMap(out)


def downscale_structured(angles: AngleMap, m: int) -> AngleMap:
    """Quarter-sum of the four sampled pixels per target, vectorized."""
    if m < 1:
        raise ValueError("ratio exponent must be at least 1")
    src = angles.angles
    out_side = angles.side >> m
    if out_side < 2:
        raise ValueError(
            f"source side {angles.side} too small for ratio 2^{m}; "
            f"need at least {1 << (m + 1)}")

    base = np.arange(out_side)
    lo = base << m
    hi = np.minimum(base + 1, out_side - 1) << m
    out = 0.25 * (src[lo[:, None], lo[None, :]]
                  + src[lo[:, None], hi[None, :]]
                  + src[hi[:, None], lo[None, :]]
                  + src[hi[:, None], hi[None, :]])
    return AngleMap(out)
