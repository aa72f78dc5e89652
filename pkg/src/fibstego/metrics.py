"""Quality and efficiency measures: PSNR, reduction ratio, bit balance, capacity."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bits import as_bits
from .embed import embedding_capacity
from .errors import InputError
from .sisr import image_depth

IDENTICAL = "identical"


@dataclass(frozen=True)
class QualityReport:
    psnr_db: float | None  # None when the images are identical
    mse: float
    changed_pixel_fraction: float

    @property
    def identical(self) -> bool:
        return self.psnr_db is None

    def psnr_text(self, digits: int = 4) -> str:
        return IDENTICAL if self.identical else f"{self.psnr_db:.{digits}f}"


@dataclass(frozen=True)
class ReductionReport:
    rr: float
    zeros_fraction: float
    ones_fraction: float


def psnr(a, b, depth: int | None = None) -> QualityReport:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise InputError(f"shape mismatch {a.shape} vs {b.shape}")
    if depth is None:
        depth = image_depth(a)
    diff = a.astype(np.int64) - b.astype(np.int64)
    mse = float(np.mean(diff.astype(np.float64) ** 2))
    changed = float(np.count_nonzero(diff)) / diff.size
    if mse == 0:
        return QualityReport(None, 0.0, 0.0)
    peak = float((1 << depth) - 1)
    return QualityReport(10.0 * math.log10(peak * peak / mse), mse, changed)


def reduction_ratio(encoded_bits: int, original_bits: int) -> float:
    if original_bits <= 0:
        raise InputError("original size must be positive")
    return encoded_bits / original_bits


def bit_balance(bits) -> tuple[float, float]:
    arr = as_bits(bits)
    if arr.size == 0:
        raise InputError("bit balance of an empty stream is undefined")
    ones = int(np.count_nonzero(arr)) / arr.size
    return 1.0 - ones, ones


def reduction_report(encoded_bits, original_bits: int) -> ReductionReport:
    """RR and bit balance of an encoded stream in one go."""
    arr = as_bits(encoded_bits)
    zeros, ones = bit_balance(arr)
    return ReductionReport(reduction_ratio(arr.size, original_bits), zeros, ones)


def capacity(cover, method: str) -> float:
    """Fraction of cover pixels that can carry a secret bit."""
    cover = np.asarray(cover)
    return embedding_capacity(cover, method) / cover.size
