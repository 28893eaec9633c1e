"""Domain types, the boolean measurement map and the two corruption channels.

Indices are 0-based everywhere inside the library.  User-facing text
formats (GTMAT files, ``supp=`` lines, the CLI) are 1-based; use
:meth:`SparseSignal.from_one_based` / :attr:`SparseSignal.one_based` at
those boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import bitmatrix

STRATEGIES = ("none", "random", "max-random")
CHANNEL_KINDS = ("noiseless", "stochastic", "adversarial")


def as_rng(rng) -> np.random.Generator:
    """Accept a Generator or anything ``default_rng`` takes (int seed, None)."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


@dataclass(frozen=True)
class DesignMeta:
    """How a contact matrix was produced.

    ``params`` is an ordered tuple of numbers; ``seed`` is ``None`` for
    deterministic constructions.
    """

    kind: str
    params: tuple = ()
    seed: int | None = None

    @property
    def label(self) -> str:
        if not self.params:
            return self.kind
        return f"{self.kind}({','.join(repr(v) for v in self.params)})"


class _BitMatrix:
    __slots__ = ("_dense", "_packed")

    def __init__(self, bits):
        arr = np.asarray(bits)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-d matrix, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"matrix dimensions must be positive, got {arr.shape}")
        if arr.dtype != bool:
            if not np.isin(arr, (0, 1)).all():
                raise ValueError("matrix entries must be 0 or 1")
        dense = np.array(arr, dtype=bool, order="C")
        dense.setflags(write=False)
        packed = bitmatrix.pack_columns(dense)
        packed.setflags(write=False)
        self._dense = dense
        self._packed = packed

    @property
    def m(self) -> int:
        return self._dense.shape[0]

    @property
    def n(self) -> int:
        return self._dense.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._dense.shape

    @property
    def dense(self) -> np.ndarray:
        """Read-only ``(m, n)`` bool view."""
        return self._dense

    @property
    def packed(self) -> np.ndarray:
        """Read-only ``(n, words)`` uint64 packed columns."""
        return self._packed

    def __getitem__(self, idx):
        return self._dense[idx]

    def column_support(self, j: int) -> np.ndarray:
        return np.flatnonzero(self._dense[:, j])

    def column_weights(self) -> np.ndarray:
        return bitmatrix.popcount(self._packed)

    def _same_bits(self, other) -> bool:
        return self.shape == other.shape and np.array_equal(self._dense, other._dense)

    __hash__ = None


class ContactMatrix(_BitMatrix):
    """The designed ``m x n`` contact matrix; the decoder's only view of sampling."""

    __slots__ = ("design_meta",)

    def __init__(self, bits, design_meta: DesignMeta | None = None):
        super().__init__(bits)
        self.design_meta = design_meta

    def __eq__(self, other):
        if not isinstance(other, ContactMatrix):
            return NotImplemented
        return self._same_bits(other) and self.design_meta == other.design_meta

    def __repr__(self):
        kind = self.design_meta.label if self.design_meta else "none"
        return f"ContactMatrix(m={self.m}, n={self.n}, kind={kind})"


class SamplingMatrix(_BitMatrix):
    """A realized sampling matrix together with per-column flip counts."""

    __slots__ = ("flips_per_column",)

    def __init__(self, bits, flips_per_column):
        super().__init__(bits)
        flips = np.array(flips_per_column, dtype=np.int64)
        if flips.shape != (self.n,) or (flips < 0).any():
            raise ValueError("flips_per_column must be n non-negative counts")
        flips.setflags(write=False)
        self.flips_per_column = flips

    @classmethod
    def _from_contact(cls, mc: ContactMatrix, dense: np.ndarray) -> "SamplingMatrix":
        flips = mc.column_weights() - dense.sum(axis=0)
        return cls(dense, flips)

    def __eq__(self, other):
        if not isinstance(other, SamplingMatrix):
            return NotImplemented
        return self._same_bits(other) and np.array_equal(
            self.flips_per_column, other.flips_per_column
        )

    def __repr__(self):
        return f"SamplingMatrix(m={self.m}, n={self.n}, flips={int(self.flips_per_column.sum())})"


@dataclass(frozen=True)
class SparseSignal:
    """Support of the unknown boolean vector (0-based, strictly increasing)."""

    n: int
    support: tuple[int, ...] = ()

    def __post_init__(self):
        support = tuple(int(i) for i in self.support)
        if self.n < 1:
            raise ValueError("signal dimension must be positive")
        if any(b <= a for a, b in zip(support, support[1:])):
            raise ValueError(f"support must be strictly increasing: {support}")
        if support and (support[0] < 0 or support[-1] >= self.n):
            raise ValueError(f"support index out of range for n={self.n}: {support}")
        object.__setattr__(self, "support", support)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "SparseSignal":
        idx = [int(i) for i in indices]
        if len(set(idx)) != len(idx):
            raise ValueError(f"duplicate support indices: {idx}")
        return cls(n, tuple(sorted(idx)))

    @classmethod
    def from_one_based(cls, n: int, indices: Iterable[int]) -> "SparseSignal":
        return cls.from_indices(n, (int(i) - 1 for i in indices))

    @property
    def one_based(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.support)

    @property
    def k(self) -> int:
        return len(self.support)

    def to_dense(self) -> np.ndarray:
        x = np.zeros(self.n, dtype=bool)
        x[list(self.support)] = True
        return x


@dataclass(frozen=True, eq=False)
class Outcome:
    """Boolean test-result vector."""

    bits: np.ndarray

    def __post_init__(self):
        arr = np.array(self.bits, dtype=bool).reshape(-1)
        arr.setflags(write=False)
        object.__setattr__(self, "bits", arr)

    @property
    def m(self) -> int:
        return self.bits.shape[0]

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def packed(self) -> np.ndarray:
        return bitmatrix.pack_vector(self.bits)

    def __eq__(self, other):
        if not isinstance(other, Outcome):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    __hash__ = None

    def __str__(self):
        return "".join("1" if b else "0" for b in self.bits)


@dataclass(frozen=True)
class ChannelSpec:
    kind: str = "noiseless"
    p: float = 1.0
    e: int = 0
    strategy: str = "none"

    def __post_init__(self):
        if self.kind not in CHANNEL_KINDS:
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if not 0.0 < self.p <= 1.0:
            raise ValueError(f"contamination probability must be in (0, 1], got {self.p}")
        if self.e < 0:
            raise ValueError(f"flip budget must be non-negative, got {self.e}")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown adversary strategy {self.strategy!r}")

    @classmethod
    def noiseless(cls) -> "ChannelSpec":
        return cls("noiseless")

    @classmethod
    def stochastic(cls, p: float) -> "ChannelSpec":
        return cls("stochastic", p=p)

    @classmethod
    def adversarial(cls, e: int, strategy: str = "random") -> "ChannelSpec":
        return cls("adversarial", e=int(e), strategy=strategy)


def _check_signal(mat: _BitMatrix, x: SparseSignal):
    if mat.n != x.n:
        raise ValueError(f"dimension mismatch: matrix has n={mat.n}, signal has n={x.n}")


def measure(ms: _BitMatrix, x: SparseSignal) -> Outcome:
    """Boolean product: each test is the OR of its entries over ``supp(x)``."""
    _check_signal(ms, x)
    cover = bitmatrix.union(ms.packed[list(x.support)])
    return Outcome(bitmatrix.unpack_columns(cover[None, :], ms.m)[:, 0])


def dilute(
    mc: ContactMatrix,
    p: float,
    rng,
    columns: Sequence[int] | None = None,
) -> SamplingMatrix:
    """Keep every 1-entry independently with probability ``p``.

    With ``columns`` given, only those columns are diluted and the rest are
    copied unchanged (zero flips).  This is enough to produce a correctly
    distributed outcome for a signal supported on ``columns``.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError(f"contamination probability must be in (0, 1], got {p}")
    rng = as_rng(rng)
    dense = mc.dense.copy()
    if p < 1.0:
        if columns is None:
            rows, cols = np.nonzero(dense)
            drop = rng.random(rows.size) >= p
            dense[rows[drop], cols[drop]] = False
        else:
            for j in sorted(set(int(c) for c in columns)):
                rows = np.flatnonzero(dense[:, j])
                dense[rows[rng.random(rows.size) >= p], j] = False
    return SamplingMatrix._from_contact(mc, dense)


def adversarial_corrupt(
    mc: ContactMatrix,
    x: SparseSignal,
    e: int,
    strategy: str,
    rng,
) -> SamplingMatrix:
    """Flip at most ``e`` ones to zero in each column.

    ``"random"`` erases a uniformly random ``min(e, weight)`` subset of each
    column in ``supp(x)``; ``"max-random"`` does the same for every column.
    """
    _check_signal(mc, x)
    if e < 0:
        raise ValueError(f"flip budget must be non-negative, got {e}")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown adversary strategy {strategy!r}")
    rng = as_rng(rng)
    dense = mc.dense.copy()
    if strategy == "none" or e == 0:
        targets: Iterable[int] = ()
    elif strategy == "random":
        targets = x.support
    else:
        targets = range(mc.n)
    for j in targets:
        rows = np.flatnonzero(dense[:, j])
        t = min(int(e), rows.size)
        if t:
            dense[rng.choice(rows, size=t, replace=False), j] = False
    return SamplingMatrix._from_contact(mc, dense)


def end_to_end_sample(
    mc: ContactMatrix,
    x: SparseSignal,
    ch: ChannelSpec,
    rng,
    materialize: bool = False,
) -> tuple[SamplingMatrix, Outcome]:
    """Run ``x`` through channel ``ch`` and measure.

    Stochastic dilution touches only ``supp(x)`` columns unless
    ``materialize`` is set; the outcome distribution is the same either way.
    """
    _check_signal(mc, x)
    if ch.kind == "noiseless":
        ms = SamplingMatrix._from_contact(mc, mc.dense.copy())
    elif ch.kind == "stochastic":
        ms = dilute(mc, ch.p, rng, columns=None if materialize else x.support)
    else:
        ms = adversarial_corrupt(mc, x, ch.e, ch.strategy, rng)
    return ms, measure(ms, x)
