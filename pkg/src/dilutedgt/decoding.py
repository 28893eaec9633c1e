"""Distance decoder and a brute-force consistency oracle."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import bitmatrix
from .model import ContactMatrix, Outcome, SparseSignal

ORACLE_LIMIT = 10**6


@dataclass(frozen=True)
class DecodeResult:
    candidates: tuple[int, ...]
    oversized: bool = False


@dataclass(frozen=True)
class DecodeEvaluation:
    exact: bool
    false_pos: int
    false_neg: int


def _check_rows(mc: ContactMatrix, y: Outcome):
    if mc.m != y.m:
        raise ValueError(f"dimension mismatch: matrix has m={mc.m}, outcome has m={y.m}")


def leftovers(mc: ContactMatrix, y: Outcome) -> np.ndarray:
    """``|supp(column) \\ supp(y)|`` for every column."""
    _check_rows(mc, y)
    return bitmatrix.leftover_counts(mc.packed, y.packed())


def distance_decode(
    mc: ContactMatrix, y: Outcome, e: int, k: int | None = None
) -> DecodeResult:
    """Declare column ``i`` present iff at most ``e`` of its ones miss ``supp(y)``.

    This is a per-column threshold test; there is no ranking and nothing is
    truncated.  When ``k`` is given, ``oversized`` flags more than ``k``
    survivors.
    """
    if e < 0:
        raise ValueError(f"tolerance must be non-negative, got {e}")
    hits = np.flatnonzero(leftovers(mc, y) <= e)
    candidates = tuple(int(i) for i in hits)
    return DecodeResult(candidates, k is not None and len(candidates) > k)


def _n_subsets(n: int, k: int) -> int:
    return sum(math.comb(n, j) for j in range(min(k, n) + 1))


def oracle_consistent_supports(
    mc: ContactMatrix, y: Outcome, k: int, e: int, limit: int = ORACLE_LIMIT
) -> list[tuple[int, ...]]:
    """Every ``S`` with ``|S| <= k`` that some <=e-per-column erasure maps to ``y``.

    Such an ``S`` must cover ``supp(y)`` and each of its columns may miss
    ``supp(y)`` in at most ``e`` places.  Works on Python sets, independently
    of the packed kernels used by :func:`distance_decode`.
    """
    _check_rows(mc, y)
    total = _n_subsets(mc.n, k)
    if total > limit:
        raise ValueError(f"oracle would enumerate {total} supports (limit {limit})")
    dense = mc.dense
    cols = [frozenset(np.flatnonzero(dense[:, j]).tolist()) for j in range(mc.n)]
    ys = frozenset(y.support.tolist())
    ok = [len(c - ys) <= e for c in cols]
    out = []
    for size in range(min(k, mc.n) + 1):
        for S in itertools.combinations(range(mc.n), size):
            if not all(ok[j] for j in S):
                continue
            covered = frozenset().union(*(cols[j] for j in S))
            if ys <= covered:
                out.append(S)
    return out


def evaluate_decode(truth: SparseSignal, result: DecodeResult) -> DecodeEvaluation:
    t, c = set(truth.support), set(result.candidates)
    fp, fn = len(c - t), len(t - c)
    return DecodeEvaluation(fp == 0 and fn == 0, fp, fn)
