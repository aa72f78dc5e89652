# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pure``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, uint8_t

from .errors import FormatError

cnp.import_array()

BACKEND = "cython"


cdef inline uint64_t _splitmix_next(uint64_t *state) noexcept nogil:
    cdef uint64_t z
    state[0] += <uint64_t>0x9E3779B97F4A7C15ULL
    z = state[0]
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EBULL
    return z ^ (z >> 31)


def splitmix64_stream(seed, Py_ssize_t count):
    cdef uint64_t state = <uint64_t>(int(seed) & 0xFFFFFFFFFFFFFFFF)
    cdef cnp.ndarray[uint64_t, ndim=1] out = np.empty(count, dtype=np.uint64)
    cdef Py_ssize_t t
    for t in range(count):
        out[t] = _splitmix_next(&state)
    return out


def permutation(Py_ssize_t n, seed):
    cdef uint64_t state = <uint64_t>(int(seed) & 0xFFFFFFFFFFFFFFFF)
    cdef cnp.ndarray[int64_t, ndim=1] perm = np.arange(n, dtype=np.int64)
    cdef int64_t[::1] p = perm
    cdef Py_ssize_t i, j
    cdef int64_t tmp
    with nogil:
        i = n - 1
        while i > 0:
            j = <Py_ssize_t>(_splitmix_next(&state) % <uint64_t>(i + 1))
            tmp = p[i]
            p[i] = p[j]
            p[j] = tmp
            i -= 1
    return perm


cdef inline Py_ssize_t _put(uint8_t[::1] out, Py_ssize_t pos, int64_t value, int width) noexcept nogil:
    cdef int s
    for s in range(width - 1, -1, -1):
        out[pos] = (value >> s) & 1
        pos += 1
    return pos


def sisr_encode(blocks, int depth, int index_bits, tcodes, int code_bits):
    cdef int64_t[:, ::1] bl = np.ascontiguousarray(blocks, dtype=np.int64)
    cdef int64_t[::1] codes = np.ascontiguousarray(tcodes, dtype=np.int64)
    cdef Py_ssize_t nb = bl.shape[0], kk = bl.shape[1]
    cdef cnp.ndarray[uint8_t, ndim=1] buf = np.empty(nb * (1 + kk * depth), dtype=np.uint8)
    cdef uint8_t[::1] out = buf
    cdef Py_ssize_t b, i, at, pos = 0
    cdef int64_t m, mx, v
    cdef int width
    with nogil:
        for b in range(nb):
            m = bl[b, 0]
            mx = m
            at = 0
            for i in range(1, kk):
                v = bl[b, i]
                if v < m:
                    m = v
                    at = i
                if v > mx:
                    mx = v
            width = 0
            while (mx - m) >> width:
                width += 1
            if width == depth:
                out[pos] = 1
                pos += 1
                for i in range(kk):
                    pos = _put(out, pos, bl[b, i], depth)
                continue
            out[pos] = 0
            pos += 1
            pos = _put(out, pos, m, depth)
            pos = _put(out, pos, codes[width], code_bits)
            if width == 0:
                continue
            pos = _put(out, pos, at, index_bits)
            for i in range(kk):
                if i != at:
                    pos = _put(out, pos, bl[b, i] - m, width)
    return buf[:pos].copy()


cdef inline int64_t _get(const uint8_t[::1] bits, Py_ssize_t pos, int width) noexcept nogil:
    cdef int64_t value = 0
    cdef int s
    for s in range(width):
        value = (value << 1) | bits[pos + s]
    return value


def sisr_decode(bits, Py_ssize_t nblocks, Py_ssize_t kk, int depth, int index_bits,
                tdecode, int code_bits, Py_ssize_t start=0):
    cdef const uint8_t[::1] src = np.ascontiguousarray(bits, dtype=np.uint8)
    cdef int64_t[::1] dec = np.ascontiguousarray(tdecode, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=2] result = np.empty((nblocks, kk), dtype=np.int64)
    cdef int64_t[:, ::1] out = result
    cdef Py_ssize_t total = src.shape[0]
    cdef Py_ssize_t pos = start, b, i, at
    cdef int64_t m
    cdef int width
    # error: 0 ok, 1 truncated, 2 bad code, 3 bad index
    cdef int error = 0
    with nogil:
        for b in range(nblocks):
            if pos + 1 > total:
                error = 1
                break
            if src[pos]:
                pos += 1
                if pos + kk * depth > total:
                    error = 1
                    break
                for i in range(kk):
                    out[b, i] = _get(src, pos, depth)
                    pos += depth
                continue
            pos += 1
            if pos + depth + code_bits > total:
                error = 1
                break
            m = _get(src, pos, depth)
            pos += depth
            width = <int>dec[_get(src, pos, code_bits)]
            pos += code_bits
            if width < 0:
                error = 2
                break
            if width == 0:
                for i in range(kk):
                    out[b, i] = m
                continue
            if pos + index_bits + (kk - 1) * width > total:
                error = 1
                break
            at = _get(src, pos, index_bits)
            pos += index_bits
            if at >= kk:
                error = 3
                break
            for i in range(kk):
                if i == at:
                    out[b, i] = m
                else:
                    out[b, i] = m + _get(src, pos, width)
                    pos += width
    if error == 1:
        raise FormatError(f"truncated SISR stream at bit {pos}")
    if error == 2:
        raise FormatError(f"unknown threshold code at bit {pos - code_bits}")
    if error == 3:
        raise FormatError("minimum index out of range")
    return result, pos - start
