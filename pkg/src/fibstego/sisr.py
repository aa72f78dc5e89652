"""Lossless secret-image size reduction (SISR).

Each k×k block is stored as its minimum plus fixed-width differences. The
width is picked from the threshold classes ``2**n - 1``; blocks whose spread
needs the full depth are stored raw behind a one-bit flag.

Block layout (all fields big-endian)::

    raw:      1 | k*k pixels, depth bits each
    constant: 0 | min (depth) | code(T*=0)
    general:  0 | min (depth) | code(T*) | min index (log2 k*k) | k*k-1 diffs, L bits each
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .bits import as_bits, pack_bits, unpack_bits
from .errors import FormatError, InputError

BLOCK_SIZES = (4, 8, 16)

# 8-bit threshold codes, kept exactly as published: they are not monotone
# in T* (7 -> 011 but 15 -> 100).
_CODES_8BIT = {0: 0b111, 1: 0b110, 3: 0b101, 7: 0b011, 15: 0b100, 31: 0b010, 63: 0b001, 127: 0b000}


def _check_depth(depth):
    if depth not in (8, 16):
        raise InputError(f"unsupported bit depth {depth}")


def _check_block_size(k):
    if k not in BLOCK_SIZES:
        raise InputError(f"block size must be one of {BLOCK_SIZES}, got {k}")


def threshold_classes(depth: int) -> tuple[int, ...]:
    """The set T: ``2**n - 1`` for n < depth, plus the raw class ``2**depth - 1``."""
    _check_depth(depth)
    return tuple((1 << n) - 1 for n in range(depth + 1))


def compute_threshold(dmax: int, depth: int = 8) -> int:
    """Smallest class in T that is >= ``dmax``."""
    _check_depth(depth)
    if not 0 <= dmax < (1 << depth):
        raise InputError(f"difference {dmax} outside [0, {(1 << depth) - 1}]")
    return (1 << int(dmax).bit_length()) - 1


def code_bits(depth: int) -> int:
    _check_depth(depth)
    return (depth - 1).bit_length()


def index_bits(k: int) -> int:
    _check_block_size(k)
    return (k * k - 1).bit_length()


@lru_cache(maxsize=None)
def _code_tables(depth):
    """(code for each width n in 0..depth-1, width for each code or -1)."""
    cb = code_bits(depth)
    if depth == 8:
        by_width = [_CODES_8BIT[(1 << n) - 1] for n in range(depth)]
    else:
        by_width = [depth - 1 - n for n in range(depth)]
    by_code = np.full(1 << cb, -1, dtype=np.int64)
    for n, c in enumerate(by_width):
        by_code[c] = n
    return np.array(by_width, dtype=np.int64), by_code


def tstar_code(tstar: int, depth: int = 8) -> str:
    """Bit code of a threshold class, as a string such as ``"100"``."""
    by_width, _ = _code_tables(depth)
    width = int(tstar).bit_length()
    if tstar != (1 << width) - 1 or width >= depth:
        raise InputError(f"{tstar} is not a coded threshold class for depth {depth}")
    return format(int(by_width[width]), "0%db" % code_bits(depth))


def tstar_decode(code: str, depth: int = 8) -> int:
    _, by_code = _code_tables(depth)
    cb = code_bits(depth)
    if len(code) != cb or set(code) - {"0", "1"}:
        raise FormatError(f"threshold code must be {cb} binary digits, got {code!r}")
    width = int(by_code[int(code, 2)])
    if width < 0:
        raise FormatError(f"unknown threshold code {code}")
    return (1 << width) - 1


def block_bit_length(tstar: int, depth: int = 8, k: int = 4) -> int:
    """Encoded size of one block in threshold class ``tstar``."""
    kk = k * k
    width = int(tstar).bit_length()
    if width == depth:
        return 1 + kk * depth
    if width == 0:
        return 1 + depth + code_bits(depth)
    return 1 + depth + code_bits(depth) + index_bits(k) + (kk - 1) * width


@dataclass(frozen=True)
class BlockEncoding:
    raw_flag: bool
    m: int
    tstar: int
    min_index: int
    diffs: tuple[int, ...]


def analyze_block(block, depth: int = 8) -> BlockEncoding:
    """Field-level view of how a block is encoded."""
    flat = np.asarray(block, dtype=np.int64).ravel().tolist()
    m = min(flat)
    tstar = compute_threshold(max(flat) - m, depth)
    at = flat.index(m)
    diffs = tuple(v - m for i, v in enumerate(flat) if i != at)
    return BlockEncoding(tstar == (1 << depth) - 1, m, tstar, at, diffs)


def _validate_pixels(arr, depth):
    if arr.size and (arr.min() < 0 or arr.max() >= (1 << depth)):
        raise InputError(f"pixel values outside [0, {(1 << depth) - 1}]")


def _square_block(block):
    arr = np.asarray(block, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InputError(f"block must be square, got shape {arr.shape}")
    _check_block_size(arr.shape[0])
    return arr


def encode_block(block, depth: int = 8) -> np.ndarray:
    arr = _square_block(block)
    _validate_pixels(arr, depth)
    k = arr.shape[0]
    codes, _ = _code_tables(depth)
    return _kernels.sisr_encode(arr.reshape(1, -1), depth, index_bits(k), codes, code_bits(depth))


def decode_block(bits, depth: int = 8, k: int = 4) -> tuple[np.ndarray, int]:
    """Decode one block from the start of ``bits``; returns ``(block, consumed)``."""
    _, by_code = _code_tables(depth)
    blocks, used = _kernels.sisr_decode(
        as_bits(bits), 1, k * k, depth, index_bits(k), by_code, code_bits(depth)
    )
    return blocks.reshape(k, k), used


def image_depth(img: np.ndarray) -> int:
    if img.dtype == np.uint8:
        return 8
    if img.dtype == np.uint16:
        return 16
    raise InputError(f"images must be uint8 or uint16 arrays, got {img.dtype}")


def split_blocks(img: np.ndarray, k: int) -> np.ndarray:
    """Row-major block order, each block flattened row-major: ``(nblocks, k*k)``."""
    h, w = img.shape
    if h % k or w % k:
        raise InputError(f"image {w}x{h} dimensions not divisible by block size {k}")
    return img.reshape(h // k, k, w // k, k).swapaxes(1, 2).reshape(-1, k * k)


def join_blocks(blocks: np.ndarray, width: int, height: int, k: int) -> np.ndarray:
    return blocks.reshape(height // k, width // k, k, k).swapaxes(1, 2).reshape(height, width)


_HEADER = struct.Struct(">4sBIIBBQ")
MAGIC = b"SISR"
VERSION = 1


@dataclass
class SisrContainer:
    width: int
    height: int
    depth: int
    k: int
    payload: bytes = field(repr=False)
    nbits: int = 0

    @property
    def payload_bits(self) -> np.ndarray:
        return unpack_bits(self.payload, self.nbits)

    @property
    def block_count(self) -> int:
        return (self.width // self.k) * (self.height // self.k)

    def to_bytes(self) -> bytes:
        head = _HEADER.pack(MAGIC, VERSION, self.width, self.height, self.depth, self.k, self.nbits)
        return head + self.payload

    @classmethod
    def from_bytes(cls, data: bytes) -> "SisrContainer":
        if len(data) < _HEADER.size:
            raise FormatError("SISR container shorter than its header")
        magic, version, width, height, depth, k, nbits = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise FormatError(f"bad magic {magic!r}")
        if version != VERSION:
            raise FormatError(f"unsupported container version {version}")
        if depth not in (8, 16) or k not in BLOCK_SIZES:
            raise FormatError(f"bad depth/block size {depth}/{k}")
        if width == 0 or height == 0 or width % k or height % k:
            raise FormatError(f"dimensions {width}x{height} not divisible by {k}")
        payload = data[_HEADER.size:]
        if len(payload) != (nbits + 7) // 8:
            raise FormatError(f"payload holds {len(payload)} bytes, header announces {nbits} bits")
        return cls(width, height, depth, k, payload, nbits)

    @property
    def header_bits(self) -> int:
        return 8 * _HEADER.size


def encode_image(img: np.ndarray, k: int = 4) -> SisrContainer:
    img = np.asarray(img)
    if img.ndim != 2:
        raise InputError("expected a 2-D grayscale image")
    depth = image_depth(img)
    _check_block_size(k)
    height, width = img.shape
    blocks = split_blocks(img.astype(np.int64), k)
    codes, _ = _code_tables(depth)
    bits = _kernels.sisr_encode(blocks, depth, index_bits(k), codes, code_bits(depth))
    return SisrContainer(width, height, depth, k, pack_bits(bits), int(bits.size))


def decode_image(container: SisrContainer) -> np.ndarray:
    c = container
    _, by_code = _code_tables(c.depth)
    blocks, used = _kernels.sisr_decode(
        c.payload_bits, c.block_count, c.k * c.k, c.depth, index_bits(c.k), by_code, code_bits(c.depth)
    )
    if used != c.nbits:
        raise FormatError(f"payload has {c.nbits - used} trailing bits after the last block")
    _validate_pixels(blocks, c.depth)
    dtype = np.uint8 if c.depth == 8 else np.uint16
    return join_blocks(blocks, c.width, c.height, c.k).astype(dtype)
