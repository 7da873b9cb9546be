"""
Fixed-width transaction bitsets.

A bitset over ``n`` transactions is a little-endian ``uint64`` word array of
``ceil(n / 64)`` words; bit ``t`` lives in word ``t // 64`` at position
``t % 64``. Bits at positions ``>= n`` are always zero so population counts
never need masking.
"""

from collections.abc import Iterable

import numpy as np
import numpy.typing as npt

WORD_BITS = 64

Bitset = npt.NDArray[np.uint64]


def word_count(width: int) -> int:
    """Number of 64-bit words needed for ``width`` bits (at least one)."""
    return max(1, -(-width // WORD_BITS))


def full(width: int) -> Bitset:
    """All ``width`` bits set, trailing bits zero."""
    return pack_rows(np.ones((1, width), dtype=bool), width)[0]


def from_indices(indices: Iterable[int], width: int) -> Bitset:
    mask = np.zeros((1, width), dtype=bool)
    for index in indices:
        if not 0 <= index < width:
            raise ValueError(f"Bit index {index} outside [0, {width})")
        mask[0, index] = True
    return pack_rows(mask, width)[0]


def pack_rows(matrix: npt.NDArray[np.bool_], width: int) -> npt.NDArray[np.uint64]:
    """Pack a boolean ``(rows, width)`` matrix into ``(rows, words)`` bitsets."""
    rows = matrix.shape[0]
    words = word_count(width)
    padded = np.zeros((rows, words * WORD_BITS), dtype=bool)
    padded[:, :width] = matrix[:, :width]
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False)


def to_indices(bitset: Bitset) -> list[int]:
    bits = np.unpackbits(bitset.astype("<u8").view(np.uint8), bitorder="little")
    return [int(i) for i in np.flatnonzero(bits)]


def popcount(bitset: Bitset) -> int:
    return int(np.bitwise_count(bitset).sum())


def popcount_rows(bitsets: npt.NDArray[np.uint64]) -> npt.NDArray[np.int64]:
    """Row-wise population count of a ``(rows, words)`` array."""
    return np.bitwise_count(bitsets).sum(axis=-1, dtype=np.int64)


def superset_rows(bitsets: npt.NDArray[np.uint64], cover: Bitset) -> npt.NDArray[np.bool_]:
    """For each row, whether it contains every bit of ``cover``."""
    return np.all((bitsets & cover) == cover, axis=-1)
