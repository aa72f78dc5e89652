"""Deterministic synthetic covers with natural-image-like local statistics.

Gaussian noise from a seeded PCG64 generator is smoothed by repeated 3x3
box filtering, stretched to the full intensity range and rounded.
"""

from __future__ import annotations

import numpy as np

DEFAULT_PASSES = 6


def box3(x: np.ndarray) -> np.ndarray:
    p = np.pad(x, 1, mode="reflect")
    h, w = x.shape
    out = np.zeros_like(x)
    for dy in range(3):
        for dx in range(3):
            out += p[dy:dy + h, dx:dx + w]
    return out / 9.0


def generate_cover(width: int, height: int, seed: int, depth: int = 8,
                   passes: int = DEFAULT_PASSES) -> np.ndarray:
    if width < 2 or height < 2:
        raise ValueError("covers need at least 2x2 pixels")
    rng = np.random.default_rng(seed)
    field = rng.standard_normal((height, width))
    for _ in range(passes):
        field = box3(field)
    lo, hi = field.min(), field.max()
    top = (1 << depth) - 1
    scaled = (field - lo) / (hi - lo) * top
    dtype = np.uint8 if depth == 8 else np.uint16
    return np.rint(scaled).astype(dtype)


def generate_covers(count: int, width: int, height: int, seed: int, depth: int = 8):
    """``count`` covers; cover i uses seed ``seed + i``."""
    return [generate_cover(width, height, seed + i, depth) for i in range(count)]
