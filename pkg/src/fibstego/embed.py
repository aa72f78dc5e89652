"""Keyed random-order embedding of one secret bit per pixel.

Three mechanisms share the same pixel visit order:

* ``lsb``     binary LSB replacement
* ``fib-lsb`` Zeckendorf bit-0 replacement, skipping pixels whose bit 1 is set
* ``map``     Zeckendorf low-triplet mapping (every pixel usable, except
              65535 in 16-bit covers, which has no in-range 1-carrier)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .bits import as_bits, bits_to_int, int_to_bits
from .errors import CapacityError, CorruptStegoError, InputError, RepresentationError
from .sisr import image_depth
from .zeckendorf import low_bits_table

LENGTH_HEADER_BITS = 32
METHODS = ("lsb", "fib-lsb", "map")


@dataclass(frozen=True)
class StegoKey:
    seed: int

    def __post_init__(self):
        if not 0 <= self.seed < 1 << 64:
            raise InputError(f"seed {self.seed} is not a 64-bit unsigned integer")


def _seed(key) -> int:
    return key.seed if isinstance(key, StegoKey) else StegoKey(int(key)).seed


def permute_indices(n: int, key) -> np.ndarray:
    """Fisher-Yates permutation of ``range(n)`` driven by SplitMix64."""
    if n < 1:
        raise InputError("cannot permute an empty index range")
    return _kernels.permutation(int(n), _seed(key))


@dataclass
class EmbedResult:
    stego: np.ndarray
    bits_embedded: int
    pixels_visited: int
    pixels_skipped: int = 0


# Low-triplet mapping, strings are (bit2, bit1, bit0).
_TRIPLET_MAP = {
    "000": ("000", "001"),
    "001": ("000", "001"),
    "010": ("010", "001"),
    "100": ("100", "101"),
    "101": ("100", "101"),
}


def map_triplet(cover3: str, secret: int) -> str:
    """New Zeckendorf low bits (MSB-first string) carrying ``secret`` in bit 0."""
    try:
        row = _TRIPLET_MAP[cover3]
    except KeyError:
        raise RepresentationError(f"{cover3!r} is not a valid Zeckendorf low triplet") from None
    if secret not in (0, 1):
        raise InputError(f"secret bit must be 0 or 1, got {secret!r}")
    return row[secret]


@lru_cache(maxsize=None)
def _mapping_table(depth: int) -> np.ndarray:
    """``table[s, v]`` = pixel value after mapping secret ``s`` into ``v``."""
    low = low_bits_table(depth).astype(np.int64)
    weights = np.array([1, 2, 3])
    values = np.arange(1 << depth, dtype=np.int64)
    old = low @ weights
    table = np.empty((2, values.size), dtype=np.int64)
    for s in (0, 1):
        new = np.array(
            [[int(c) for c in reversed(map_triplet(f"{b2}{b1}{b0}", s))] for b0, b1, b2 in low.tolist()]
        )
        table[s] = values - old + new @ weights
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def _method_tables(method: str, depth: int):
    """Per-intensity tables ``(usable, written, read)`` for one mechanism.

    ``usable[v]``     the pixel may carry a bit
    ``written[s, v]`` value after embedding secret ``s``
    ``read[v]``       the bit an extractor reads back
    """
    values = np.arange(1 << depth, dtype=np.int64)
    top = (1 << depth) - 1
    if method == "lsb":
        written = np.stack([values & ~1, values | 1])
        read = (values & 1).astype(np.uint8)
        usable = np.ones(values.size, dtype=bool)
    else:
        low = low_bits_table(depth)
        read = low[:, 0].copy()
        if method == "fib-lsb":
            written = np.stack([values - read, values - read + 1])
            usable = low[:, 1] == 0
        else:
            written = _mapping_table(depth).copy()
            usable = np.ones(values.size, dtype=bool)
        # At 16 bits the top intensity ends in ...100, so writing a 1 would
        # overflow. No embedding ever produces that value, so skipping it
        # keeps the receiver's candidate set identical.
        usable &= (written <= top).all(axis=0) & (written >= 0).all(axis=0)
    written = np.where(usable, written, values)
    for arr in (written, read, usable):
        arr.setflags(write=False)
    return usable, written, read


def _prepare(cover, message):
    cover = np.asarray(cover)
    if cover.ndim != 2:
        raise InputError("expected a 2-D grayscale image")
    return cover, image_depth(cover), as_bits(message)


def _check_capacity(nbits, available, method):
    if nbits > available:
        raise CapacityError(
            f"{method}: message needs {nbits} positions, cover offers {available}",
            required=nbits,
            available=available,
        )


def _candidates(img, depth, method, key):
    """Visit order and the usable pixels in that order."""
    order = permute_indices(img.size, key)
    usable = _method_tables(method, depth)[0]
    if usable.all():
        return order, order
    return order, order[usable[img.reshape(-1)[order]]]


def _embed(cover, message, key, method) -> EmbedResult:
    cover, depth, bits = _prepare(cover, message)
    order, cand = _candidates(cover, depth, method, key)
    _check_capacity(bits.size, cand.size, method)
    _, written, _ = _method_tables(method, depth)
    stego = cover.copy()
    flat = stego.reshape(-1)
    pos = cand[: bits.size]
    flat[pos] = written[bits, flat[pos]]
    if cand is order or not bits.size:
        visited = int(bits.size)
    else:
        where = np.empty(order.size, dtype=np.int64)
        where[order] = np.arange(order.size)
        visited = int(where[pos[-1]]) + 1
    return EmbedResult(stego, int(bits.size), visited, visited - int(bits.size))


def _extract(stego, nbits, key, method) -> np.ndarray:
    stego = np.asarray(stego)
    depth = image_depth(stego)
    _, cand = _candidates(stego, depth, method, key)
    _check_capacity(nbits, cand.size, method)
    return _method_tables(method, depth)[2][stego.reshape(-1)[cand[:nbits]]]


def embed_lsb_binary(cover, message, key) -> EmbedResult:
    return _embed(cover, message, key, "lsb")


def extract_lsb_binary(stego, nbits: int, key) -> np.ndarray:
    return _extract(stego, nbits, key, "lsb")


def embed_lsb_fibonacci(cover, message, key) -> EmbedResult:
    """Replace Zeckendorf bit 0, skipping pixels whose bit 1 is set.

    Such a pixel could only take a 0, so it is skipped for either bit;
    embedding never touches bit 1 and the receiver sees the same candidates.
    """
    return _embed(cover, message, key, "fib-lsb")


def extract_lsb_fibonacci(stego, nbits: int, key) -> np.ndarray:
    return _extract(stego, nbits, key, "fib-lsb")


def embed_mapping(cover, message, key) -> EmbedResult:
    return _embed(cover, message, key, "map")


def extract_mapping(stego, nbits: int, key) -> np.ndarray:
    return _extract(stego, nbits, key, "map")


EMBEDDERS = {
    "lsb": (embed_lsb_binary, extract_lsb_binary),
    "fib-lsb": (embed_lsb_fibonacci, extract_lsb_fibonacci),
    "map": (embed_mapping, extract_mapping),
}


def _method(method):
    try:
        return EMBEDDERS[method]
    except KeyError:
        raise InputError(f"unknown method {method!r}; choose from {METHODS}") from None


def embed(cover, message, method: str, key) -> EmbedResult:
    return _method(method)[0](cover, message, key)


def extract(stego, nbits: int, method: str, key) -> np.ndarray:
    return _method(method)[1](stego, nbits, key)


def embedding_capacity(img, method: str, key=0) -> int:
    """Number of message bits the cover accepts under ``method``."""
    img = np.asarray(img)
    _method(method)
    usable = _method_tables(method, image_depth(img))[0]
    return int(np.count_nonzero(usable[img.reshape(-1)]))


def embed_payload(cover, payload, method: str, key) -> np.ndarray:
    """Embed ``payload`` behind a 32-bit big-endian bit-count header."""
    bits = as_bits(payload)
    if bits.size >> LENGTH_HEADER_BITS:
        raise InputError("payload longer than the 32-bit length header allows")
    framed = np.concatenate([int_to_bits(bits.size, LENGTH_HEADER_BITS), bits])
    return embed(cover, framed, method, key).stego


def extract_payload(stego, method: str, key) -> np.ndarray:
    stego = np.asarray(stego)
    available = embedding_capacity(stego, method)
    if available < LENGTH_HEADER_BITS:
        raise CorruptStegoError("stego too small to carry a length header")
    head = extract(stego, LENGTH_HEADER_BITS, method, key)
    nbits = bits_to_int(head)
    if nbits > available - LENGTH_HEADER_BITS:
        raise CorruptStegoError(
            f"header announces {nbits} bits but only {available - LENGTH_HEADER_BITS} remain"
        )
    return extract(stego, LENGTH_HEADER_BITS + nbits, method, key)[LENGTH_HEADER_BITS:]
