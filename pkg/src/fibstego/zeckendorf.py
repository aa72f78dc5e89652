"""Zeckendorf (Fibonacci) representation of pixel intensities.

Words are stored least-significant first: ``bits[k]`` carries weight
``fib_weights(depth)[k]`` and the weights run 1, 2, 3, 5, 8, ...
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import RangeError, ValidityError

SUPPORTED_DEPTHS = (8, 16)


def _check_depth(depth: int) -> None:
    if depth not in SUPPORTED_DEPTHS:
        raise ValueError(f"unsupported bit depth {depth}; expected one of {SUPPORTED_DEPTHS}")


@lru_cache(maxsize=None)
def fib_weights(depth: int) -> tuple[int, ...]:
    """Positional weights for ``depth``-bit intensities.

    The word length is the smallest n whose largest no-adjacent-ones word
    reaches ``2**depth - 1``. That largest value is ``w[n] - 1``, so we grow
    the sequence until the next weight exceeds the maximum intensity.
    """
    _check_depth(depth)
    top = (1 << depth) - 1
    weights = [1, 2]
    while weights[-1] - 1 < top:
        weights.append(weights[-1] + weights[-2])
    # weights[-1] is w[n]; it is the first one not needed as a position
    return tuple(weights[:-1])


def word_length(depth: int) -> int:
    return len(fib_weights(depth))


@dataclass(frozen=True)
class ZeckendorfWord:
    """Fixed-width Fibonacci word; ``bits[0]`` is the least significant."""

    bits: tuple[int, ...]
    depth: int = 8

    def __post_init__(self):
        if len(self.bits) != word_length(self.depth):
            raise ValueError(
                f"word has {len(self.bits)} bits, depth {self.depth} needs {word_length(self.depth)}"
            )
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")

    @classmethod
    def from_string(cls, text: str, depth: int = 8) -> "ZeckendorfWord":
        """Parse an MSB-first string such as ``"100001000001"``."""
        text = text.replace(" ", "")
        return cls(tuple(int(c) for c in reversed(text)), depth)

    def __str__(self) -> str:
        return "".join(str(b) for b in reversed(self.bits))

    @property
    def value(self) -> int:
        return sum(w for b, w in zip(self.bits, fib_weights(self.depth)) if b)


def is_valid(word: ZeckendorfWord) -> bool:
    bits = word.bits
    return not any(bits[k] and bits[k + 1] for k in range(len(bits) - 1))


def to_zeckendorf(value: int, depth: int = 8) -> ZeckendorfWord:
    top = (1 << depth) - 1
    if not 0 <= value <= top:
        raise RangeError(f"value {value} outside [0, {top}] for depth {depth}")
    weights = fib_weights(depth)
    bits = [0] * len(weights)
    rest = int(value)
    for k in range(len(weights) - 1, -1, -1):
        if weights[k] <= rest:
            bits[k] = 1
            rest -= weights[k]
    return ZeckendorfWord(tuple(bits), depth)


def from_zeckendorf(word: ZeckendorfWord) -> int:
    if not is_valid(word):
        raise ValidityError(f"word {word} has adjacent ones")
    value = word.value
    top = (1 << word.depth) - 1
    if value > top:
        raise RangeError(f"word {word} decodes to {value} > {top}")
    return value


@lru_cache(maxsize=None)
def low_bits_table(depth: int) -> np.ndarray:
    """Zeckendorf bits 0..2 for every intensity, shape ``(2**depth, 3)``.

    Used by the vectorised embedders; the greedy encoder is run once per
    value and the result cached.
    """
    _check_depth(depth)
    weights = np.array(fib_weights(depth), dtype=np.int64)
    values = np.arange(1 << depth, dtype=np.int64)
    rest = values.copy()
    bits = np.zeros((values.size, weights.size), dtype=np.uint8)
    for k in range(weights.size - 1, -1, -1):
        take = rest >= weights[k]
        bits[take, k] = 1
        rest[take] -= weights[k]
    table = np.ascontiguousarray(bits[:, :3])
    table.setflags(write=False)
    return table
