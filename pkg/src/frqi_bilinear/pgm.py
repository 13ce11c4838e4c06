"""PGM image file support.

Reads binary (P5) and plain-text (P2) grayscale files with maxval 255 and
writes canonical P5. Comments (# to end of line) are accepted anywhere in
the header. Only square images with a power-of-two side load successfully,
since that is the only shape the encoder accepts.
"""

from __future__ import annotations

import numpy as np

from .frqi import GrayImage


def _tokens(data: bytes):
    """Yield whitespace-separated header tokens, skipping # comments."""
    i = 0
    size = len(data)
    while i < size:
        c = data[i:i + 1]
        if c.isspace():
            i += 1
        elif c == b"#":
            while i < size and data[i:i + 1] != b"\n":
                i += 1
        else:
            j = i
            while j < size and not data[j:j + 1].isspace() \
                    and data[j:j + 1] != b"#":
                j += 1
            yield i, data[i:j]
            i = j


def read_pgm(path) -> GrayImage:
    with open(path, "rb") as fh:
        data = fh.read()

    tok = _tokens(data)
    try:
        _, magic = next(tok)
        _, w_tok = next(tok)
        _, h_tok = next(tok)
        pos, maxval_tok = next(tok)
    except StopIteration:
        raise ValueError(f"{path}: truncated PGM header") from None
    if magic not in (b"P2", b"P5"):
        raise ValueError(f"{path}: not a PGM file (magic {magic!r})")
    width, height, maxval = int(w_tok), int(h_tok), int(maxval_tok)
    if maxval != 255:
        raise ValueError(f"{path}: maxval must be 255, got {maxval}")

    count = width * height
    if magic == b"P5":
        # Exactly one whitespace byte separates maxval from raster data.
        start = pos + len(maxval_tok) + 1
        raster = data[start:start + count]
        if len(raster) < count:
            raise ValueError(f"{path}: expected {count} pixel bytes, "
                             f"got {len(raster)}")
        pixels = np.frombuffer(raster, dtype=np.uint8, count=count)
    else:
        values = [int(t) for _, t in tok]
        if len(values) != count:
            raise ValueError(f"{path}: expected {count} pixel values, "
                             f"got {len(values)}")
        if any(v < 0 or v > 255 for v in values):
            raise ValueError(f"{path}: pixel value out of range 0..255")
        pixels = np.asarray(values, dtype=np.uint8)

    try:
        return GrayImage(pixels.reshape(height, width))
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None


def write_pgm(path, image: GrayImage):
    """Write canonical binary PGM: 'P5\\n{w} {h}\\n255\\n' + raster."""
    header = f"P5\n{image.side} {image.side}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(image.pixels.tobytes())
