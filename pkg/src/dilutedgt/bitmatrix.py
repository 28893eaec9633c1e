"""Column-packed boolean matrices.

Columns are stored as rows of a ``(n, words)`` uint64 array so that set
operations on column supports become word-wise AND/OR/NOT followed by a
popcount.  Bits past row ``m`` in the last word are always zero.
"""

from __future__ import annotations

import numpy as np

WORD_BITS = 64


def n_words(m: int) -> int:
    return (m + WORD_BITS - 1) // WORD_BITS


def pack_columns(dense: np.ndarray) -> np.ndarray:
    """Pack an ``(m, n)`` boolean array into ``(n, words)`` uint64 columns."""
    dense = np.asarray(dense, dtype=bool)
    m, n = dense.shape
    words = n_words(m)
    padded = np.zeros((n, words * WORD_BITS), dtype=bool)
    padded[:, :m] = dense.T
    # little bit order keeps row r at bit r % 64 of word r // 64
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view("<u8").astype(np.uint64, copy=False).reshape(n, words)


def pack_vector(bits: np.ndarray) -> np.ndarray:
    """Pack a length-m boolean vector into ``words`` uint64 values."""
    return pack_columns(np.asarray(bits, dtype=bool)[:, None])[0]


def unpack_columns(packed: np.ndarray, m: int) -> np.ndarray:
    """Inverse of :func:`pack_columns`; returns an ``(m, n)`` bool array."""
    packed = np.ascontiguousarray(packed, dtype="<u8")
    as_bytes = packed.view(np.uint8).reshape(packed.shape[0], -1)
    bits = np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :m]
    return bits.T.astype(bool)


def popcount(words: np.ndarray, axis: int = -1) -> np.ndarray:
    """Number of set bits, summed along ``axis``."""
    return np.bitwise_count(words).sum(axis=axis, dtype=np.int64)


def leftover_counts(columns: np.ndarray, cover: np.ndarray) -> np.ndarray:
    """``|supp(col) \\ supp(cover)|`` for every packed column.

    ``cover`` broadcasts against ``columns``; a single packed vector gives
    one count per column.
    """
    return popcount(columns & ~cover)


def union(columns: np.ndarray) -> np.ndarray:
    """Bitwise OR of a stack of packed columns (empty stack gives zeros)."""
    if columns.shape[0] == 0:
        return np.zeros(columns.shape[1:], dtype=np.uint64)
    return np.bitwise_or.reduce(columns, axis=0)
