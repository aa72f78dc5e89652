"""RS and WS detectors for LSB replacement.

Fixed variants (absolute estimates depend on these choices):

* RS: horizontal non-overlapping groups of 4 pixels, mask ``[0, 1, 1, 0]``,
  smoothness ``sum |x[i+1] - x[i]|``, quadratic length estimator.
* WS: 4-neighbour mean predictor, weights ``1 / (5 + var)`` over the same
  four neighbours, interior pixels only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError

MASK = np.array([0, 1, 1, 0], dtype=np.int64)


@dataclass(frozen=True)
class RsReport:
    rm: float
    sm: float
    rm_neg: float
    sm_neg: float
    estimated_payload: float | None = None  # None: estimator had no reliable root

    @property
    def reliable(self) -> bool:
        return self.estimated_payload is not None


@dataclass(frozen=True)
class WsReport:
    estimated_payload: float
    raw_estimate: float


def _as_8bit(img) -> np.ndarray:
    img = np.asarray(img)
    if img.ndim != 2:
        raise InputError("expected a 2-D grayscale image")
    if img.dtype != np.uint8:
        raise InputError(f"detectors are defined for 8-bit images, got {img.dtype}")
    return img.astype(np.int64)


def flip_positive(x: np.ndarray) -> np.ndarray:
    """F1: 2k <-> 2k+1."""
    return x ^ 1


def flip_negative(x: np.ndarray) -> np.ndarray:
    """F-1: 2k <-> 2k-1, i.e. F1 shifted by one."""
    return ((x + 1) ^ 1) - 1


def _groups(img: np.ndarray) -> np.ndarray:
    h, w = img.shape
    if w < 4:
        raise InputError("RS needs images at least 4 pixels wide")
    usable = w - w % 4
    return img[:, :usable].reshape(-1, 4)


def _smoothness(groups: np.ndarray) -> np.ndarray:
    return np.abs(np.diff(groups, axis=1)).sum(axis=1)


def rs_statistics(img, mask=MASK) -> RsReport:
    """Regular/singular group fractions under ``mask`` and ``-mask``."""
    groups = _groups(_as_8bit(img))
    mask = np.asarray(mask, dtype=bool)
    base = _smoothness(groups)
    fractions = []
    for flip in (flip_positive, flip_negative):
        flipped = np.where(mask, flip(groups), groups)
        after = _smoothness(flipped)
        fractions.append(float(np.mean(after > base)))
        fractions.append(float(np.mean(after < base)))
    rm, sm, rm_neg, sm_neg = fractions
    return RsReport(rm, sm, rm_neg, sm_neg)


def solve_rs_quadratic(d0, d1, dn0, dn1) -> float | None:
    """Root of the RS quadratic smaller in magnitude, mapped to a payload.

    Returns ``None`` when there is no real root or the equation degenerates.
    """
    a = 2.0 * (d1 + d0)
    b = dn0 - dn1 - d1 - 3.0 * d0
    c = d0 - dn0
    if abs(a) < 1e-12:
        if abs(b) < 1e-12:
            return None
        x = -c / b
    else:
        disc = b * b - 4.0 * a * c
        if disc < 0:
            return None
        root = math.sqrt(disc)
        x = min(((-b + root) / (2 * a), (-b - root) / (2 * a)), key=abs)
    if x == 0.5:
        return None
    return x / (x - 0.5)


def rs_estimate_length(img) -> RsReport:
    """RS statistics plus the payload estimate, clamped to [0, 1]."""
    img8 = _as_8bit(img)
    stats = rs_statistics(img)
    flipped = rs_statistics(flip_positive(img8).astype(np.uint8))
    p = solve_rs_quadratic(
        stats.rm - stats.sm,
        flipped.rm - flipped.sm,
        stats.rm_neg - stats.sm_neg,
        flipped.rm_neg - flipped.sm_neg,
    )
    if p is not None:
        p = min(max(p, 0.0), 1.0)
    return RsReport(stats.rm, stats.sm, stats.rm_neg, stats.sm_neg, p)


def ws_estimate(img) -> WsReport:
    s = _as_8bit(img).astype(np.float64)
    h, w = s.shape
    if h < 3 or w < 3:
        raise InputError("WS needs at least one interior pixel (3x3 image)")
    centre = s[1:-1, 1:-1]
    nb = np.stack([s[:-2, 1:-1], s[2:, 1:-1], s[1:-1, :-2], s[1:-1, 2:]])
    pred = nb.mean(axis=0)
    var = nb.var(axis=0)
    weights = 1.0 / (5.0 + var)
    weights /= weights.sum()
    flipped = centre + 1.0 - 2.0 * np.mod(centre, 2.0)
    raw = 2.0 * float(np.sum(weights * (centre - pred) * (centre - flipped)))
    return WsReport(min(max(raw, 0.0), 1.0), raw)
