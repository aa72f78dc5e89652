"""Reference (pure Python + numpy) versions of the hot kernels.

``_speedups.pyx`` implements the same three functions; ``_kernels`` picks
one at import time. Both must produce identical output for every input.
"""

from __future__ import annotations

import numpy as np

from .errors import FormatError

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1

BACKEND = "python"


def splitmix64_stream(seed: int, count: int) -> np.ndarray:
    """First ``count`` SplitMix64 outputs for ``seed``.

    The state after t calls is ``seed + t * golden`` (mod 2**64), so every
    output can be computed independently.
    """
    steps = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & _MASK64) + steps * _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def permutation(n: int, seed: int) -> np.ndarray:
    draws = splitmix64_stream(seed, n - 1)
    bounds = np.arange(n, 1, -1, dtype=np.uint64)  # i + 1 for i = n-1 .. 1
    picks = (draws % bounds).tolist()
    perm = list(range(n))
    i = n - 1
    for j in picks:
        perm[i], perm[j] = perm[j], perm[i]
        i -= 1
    return np.array(perm, dtype=np.int64)


def sisr_encode(blocks, depth, index_bits, tcodes, code_bits) -> np.ndarray:
    """Encode rows of ``blocks`` (one flattened block per row) to a 0/1 array."""
    parts = []
    dfmt = "0%db" % depth
    ifmt = "0%db" % index_bits
    cfmt = "0%db" % code_bits
    codes = [format(c, cfmt) for c in tcodes]
    for row in np.asarray(blocks).tolist():
        m = min(row)
        width = (max(row) - m).bit_length()
        if width == depth:
            parts.append("1")
            parts.extend(format(v, dfmt) for v in row)
            continue
        parts.append("0")
        parts.append(format(m, dfmt))
        parts.append(codes[width])
        if width == 0:
            continue
        at = row.index(m)
        parts.append(format(at, ifmt))
        wfmt = "0%db" % width
        parts.extend(format(v - m, wfmt) for i, v in enumerate(row) if i != at)
    text = "".join(parts).encode("ascii")
    return (np.frombuffer(text, dtype=np.uint8) - ord("0")).astype(np.uint8)


def sisr_decode(bits, nblocks, kk, depth, index_bits, tdecode, code_bits, start=0):
    """Decode ``nblocks`` blocks starting at bit ``start``.

    Returns ``(blocks, consumed)`` with ``blocks`` of shape ``(nblocks, kk)``.
    """
    text = (np.asarray(bits, dtype=np.uint8) + ord("0")).tobytes().decode("ascii")
    total = len(text)
    pos = start
    out = np.empty((nblocks, kk), dtype=np.int64)

    def take(width):
        nonlocal pos
        if pos + width > total:
            raise FormatError(f"truncated SISR stream at bit {pos}")
        value = int(text[pos:pos + width], 2) if width else 0
        pos += width
        return value

    for b in range(nblocks):
        if take(1):
            out[b] = [take(depth) for _ in range(kk)]
            continue
        m = take(depth)
        width = int(tdecode[take(code_bits)])
        if width < 0:
            raise FormatError(f"unknown threshold code at bit {pos - code_bits}")
        if width == 0:
            out[b] = m
            continue
        at = take(index_bits)
        if at >= kk:
            raise FormatError(f"minimum index {at} out of range")
        row = [m + take(width) for _ in range(kk - 1)]
        row.insert(at, m)
        out[b] = row
    return out, pos - start
