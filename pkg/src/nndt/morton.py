"""Morton (z-order) keys and least-significant-digit radix sort.

Keys interleave the bits of a quantized (x, y) pair, y in the odd positions,
so that sorting by key orders points along the z-order curve.  Coordinates up
to 32 bits per axis fit a 64-bit key.
"""

from __future__ import annotations

import numpy as np

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_M8 = np.uint64(0x00FF00FF00FF00FF)
_M16 = np.uint64(0x0000FFFF0000FFFF)

_RADIX_BITS = 11
_RADIX_MASK = np.uint64((1 << _RADIX_BITS) - 1)


def _spread(x: np.ndarray) -> np.ndarray:
    """Insert a zero bit between consecutive bits of each 32-bit value."""
    x = x & np.uint64(0xFFFFFFFF)
    x = (x | (x << np.uint64(16))) & _M16
    x = (x | (x << np.uint64(8))) & _M8
    x = (x | (x << np.uint64(4))) & _M4
    x = (x | (x << np.uint64(2))) & _M2
    x = (x | (x << np.uint64(1))) & _M1
    return x


def morton_keys(qx, qy) -> np.ndarray:
    """Vectorized interleave of quantized coordinate arrays into uint64 keys."""
    qx = np.asarray(qx, dtype=np.uint64)
    qy = np.asarray(qy, dtype=np.uint64)
    return _spread(qx) | (_spread(qy) << np.uint64(1))


def morton_key(qx: int, qy: int, bits: int) -> int:
    """Interleave one quantized pair; validates the coordinate range."""
    if not 1 <= bits <= 32:
        raise ValueError("bits must be in [1, 32]")
    top = 1 << bits
    if not (0 <= qx < top and 0 <= qy < top):
        raise ValueError(f"quantized coordinate out of range [0, 2^{bits})")
    return int(morton_keys(np.array([qx]), np.array([qy]))[0])


def radix_sort(keys, key_bits: int | None = None) -> np.ndarray:
    """Stable ascending sort; returns the permutation as an int64 array.

    Classic LSD radix sort: one stable counting pass per 11-bit digit of the
    fixed-width keys, least significant digit first.
    """
    arr = np.asarray(keys, dtype=np.uint64)
    n = arr.size
    perm = np.arange(n, dtype=np.int64)
    if n <= 1:
        return perm
    if key_bits is None:
        key_bits = max(1, int(arr.max()).bit_length())
    for shift in range(0, key_bits, _RADIX_BITS):
        digits = ((arr[perm] >> np.uint64(shift)) & _RADIX_MASK).astype(np.uint16)
        perm = perm[np.argsort(digits, kind="stable")]
    return perm
