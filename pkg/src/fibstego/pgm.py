"""Binary PGM (P5) reading and writing, 8-bit and big-endian 16-bit."""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .errors import FormatError

_TOKEN = re.compile(rb"(?:\s|#[^\n]*\n?)*([^\s#]+)")


def parse_pgm(data: bytes) -> np.ndarray:
    pos = 0
    fields = []
    for _ in range(4):
        match = _TOKEN.match(data, pos)
        if not match:
            raise FormatError("truncated PGM header")
        fields.append(match.group(1))
        pos = match.end()
    if fields[0] != b"P5":
        raise FormatError(f"not a binary PGM (magic {fields[0][:8]!r})")
    try:
        width, height, maxval = (int(f) for f in fields[1:])
    except ValueError:
        raise FormatError("non-numeric PGM header field") from None
    if maxval not in (255, 65535):
        raise FormatError(f"unsupported maxval {maxval}; expected 255 or 65535")
    if width <= 0 or height <= 0:
        raise FormatError(f"bad PGM dimensions {width}x{height}")
    # exactly one whitespace byte separates the header from the raster
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise FormatError("missing whitespace after PGM header")
    raster = data[pos + 1:]
    dtype = np.dtype(np.uint8) if maxval == 255 else np.dtype(">u2")
    expected = width * height * dtype.itemsize
    if len(raster) != expected:
        raise FormatError(f"PGM raster holds {len(raster)} bytes, header implies {expected}")
    img = np.frombuffer(raster, dtype=dtype).reshape(height, width)
    return img.astype(np.uint8 if maxval == 255 else np.uint16)


def format_pgm(img: np.ndarray) -> bytes:
    img = np.asarray(img)
    if img.ndim != 2:
        raise ValueError("PGM holds 2-D grayscale images only")
    if img.dtype == np.uint8:
        maxval, raster = 255, img.tobytes()
    elif img.dtype == np.uint16:
        maxval, raster = 65535, img.astype(">u2").tobytes()
    else:
        raise ValueError(f"cannot store {img.dtype} as PGM")
    height, width = img.shape
    return b"P5\n%d %d\n%d\n" % (width, height, maxval) + raster


def read_pgm(path) -> np.ndarray:
    return parse_pgm(Path(path).read_bytes())


def write_pgm(path, img: np.ndarray) -> None:
    Path(path).write_bytes(format_pgm(img))
