"""Bit-stream helpers. A stream is a 1-D ``uint8`` array of 0/1 values."""

from __future__ import annotations

import numpy as np


def as_bits(bits) -> np.ndarray:
    """Coerce a 0/1 sequence or a ``"0101"`` string to a ``uint8`` array."""
    if isinstance(bits, str):
        return bits_from_str(bits)
    arr = np.asarray(bits, dtype=np.uint8).ravel()
    if arr.size and arr.max() > 1:
        raise ValueError("bit streams may only contain 0 and 1")
    return arr


def bits_from_str(text: str) -> np.ndarray:
    text = "".join(text.split())
    raw = np.frombuffer(text.encode("ascii"), dtype=np.uint8)
    bits = raw - ord("0")
    if bits.size and bits.max() > 1:
        raise ValueError("bit strings may only contain '0' and '1'")
    return bits.astype(np.uint8)


def bits_to_str(bits) -> str:
    return (np.asarray(bits, dtype=np.uint8) + ord("0")).tobytes().decode("ascii")


def pack_bits(bits) -> bytes:
    """MSB-first packing; the final byte is zero-padded."""
    return np.packbits(as_bits(bits)).tobytes()


def unpack_bits(data: bytes, nbits: int | None = None) -> np.ndarray:
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    if nbits is not None:
        if nbits > bits.size:
            raise ValueError(f"need {nbits} bits, only {bits.size} available")
        bits = bits[:nbits]
    return bits


def int_to_bits(value: int, width: int) -> np.ndarray:
    """Big-endian fixed-width binary."""
    if value < 0 or value >> width:
        raise ValueError(f"{value} does not fit in {width} bits")
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


def bits_to_int(bits) -> int:
    out = 0
    for b in np.asarray(bits, dtype=np.uint8):
        out = (out << 1) | int(b)
    return out
