"""Disjunctness certification and the analytic failure bounds."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import bitmatrix
from .designs import KSDesignParams
from .model import ContactMatrix, SamplingMatrix, SparseSignal

VERIFY_LIMIT = 10**7
_LN10 = math.log(10.0)


@dataclass(frozen=True)
class Witness:
    """Columns ``S`` that leave only ``leftover <= e`` private ones in column ``i``."""

    S: tuple[int, ...]
    i: int
    leftover: int


@dataclass(frozen=True)
class DisjunctReport:
    k: int
    e: int
    holds: bool
    witness: Witness | None = None

    def to_json(self) -> str:
        """Single-line JSON; column indices are 1-based."""
        out = {"k": self.k, "e": self.e, "holds": self.holds, "witness": None}
        if self.witness is not None:
            w = self.witness
            out["witness"] = {
                "S": [j + 1 for j in w.S],
                "i": w.i + 1,
                "leftover": w.leftover,
            }
        return json.dumps(out)


@dataclass(frozen=True)
class BoundReport:
    """An upper bound on a failure probability.

    ``value`` is what callers should use; ``raw`` is the formula before any
    clamping and ``log10`` is ``log10(raw)`` computed in log space, so it
    stays finite when ``raw`` underflows.
    """

    name: str
    value: float
    raw: float
    log10: float
    inputs: dict = field(default_factory=dict)
    alternatives: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self))


@dataclass(frozen=True)
class WeightStats:
    min: int
    max: int
    mean: float


def leftover(mc: ContactMatrix, S, i: int) -> int:
    """``|supp(M_i) \\ U_{j in S} supp(M_j)|``."""
    cover = bitmatrix.union(mc.packed[list(S)])
    return int(bitmatrix.leftover_counts(mc.packed[i], cover))


def _n_checks(n: int, s: int) -> int:
    return n * math.comb(n, s)


def verify_disjunct(
    mc: ContactMatrix, k: int, e: int, limit: int = VERIFY_LIMIT, chunk: int = 256
) -> DisjunctReport:
    """Exhaustively check ``(k, e)``-disjunctness.

    Only sets of size ``min(k, n-1)`` are enumerated: growing ``S`` can
    only shrink the leftover, so those sets are the binding ones.  The
    witness is the first violation with ``S`` in lexicographic order and
    ``i`` ascending.
    """
    if k < 0 or e < 0:
        raise ValueError("k and e must be non-negative")
    n = mc.n
    s = min(k, n - 1)
    if _n_checks(n, s) > limit:
        raise ValueError(
            f"verification needs n*C(n,{s}) = {_n_checks(n, s)} checks (limit {limit})"
        )
    cols = mc.packed
    if s == 0:
        counts = bitmatrix.popcount(cols)
        bad = np.flatnonzero(counts <= e)
        if bad.size:
            i = int(bad[0])
            return DisjunctReport(k, e, False, Witness((), i, int(counts[i])))
        return DisjunctReport(k, e, True)

    for prefix in itertools.combinations(range(n), s - 1):
        start = prefix[-1] + 1 if prefix else 0
        base = bitmatrix.union(cols[list(prefix)])
        for lo in range(start, n, chunk):
            lasts = np.arange(lo, min(n, lo + chunk))
            unions = base[None, :] | cols[lasts]
            counts = bitmatrix.leftover_counts(cols[None, :, :], unions[:, None, :])
            counts[:, list(prefix)] = e + 1
            counts[np.arange(lasts.size), lasts] = e + 1
            hits = np.argwhere(counts <= e)
            if hits.size:
                r, i = (int(v) for v in hits[0])
                S = prefix + (int(lasts[r]),)
                return DisjunctReport(k, e, False, Witness(S, i, int(counts[r, i])))
    return DisjunctReport(k, e, True)


@dataclass(frozen=True)
class ConversePair:
    x: SparseSignal
    x_prime: SparseSignal
    sampling: SamplingMatrix


def converse_pair(mc: ContactMatrix, witness: Witness) -> ConversePair:
    """Two signals an adversary can make indistinguishable.

    ``x`` is supported on ``S`` and ``x'`` on ``S + {i}``.  Erasing the
    ``leftover`` private ones of column ``i`` (at most ``e`` flips, all in
    one column) makes both produce the same outcome.
    """
    S, i = tuple(witness.S), witness.i
    dense = mc.dense.copy()
    cover = dense[:, list(S)].any(axis=1)
    dense[dense[:, i] & ~cover, i] = False
    ms = SamplingMatrix._from_contact(mc, dense)
    return ConversePair(
        SparseSignal.from_indices(mc.n, S),
        SparseSignal.from_indices(mc.n, S + (i,)),
        ms,
    )


def prop2_stochastic_error_bound(
    q: float, m: int, n: int, p: float, delta: float
) -> BoundReport:
    """``n exp(-delta^2 (1-delta)(1-p) q m / 4)``: some column loses too many ones.

    Not clamped; with ``delta = 0`` it equals ``n``.
    """
    exponent = delta * delta * (1.0 - delta) * (1.0 - p) * q * m / 4.0
    raw = n * math.exp(-exponent)
    return BoundReport(
        "prop2_stochastic",
        raw,
        raw,
        (math.log(n) - exponent) / _LN10,
        {"q": q, "m": m, "n": n, "p": p, "delta": delta},
    )


def log_comb(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def prob_design_failure_bound(
    n: int, k: int, q: float, m: int, e: float, gamma: float | None = None
) -> BoundReport:
    """Union bound on a Bernoulli matrix failing to be ``(k, e)``-disjunct.

    Each (S, i) pair fails with probability at most ``exp(-(mu-e)^2/(2 mu))``
    where ``mu = q (1-q)^k m`` is the expected number of private rows.  The
    value is clamped to 1 and is exactly 1 when ``e >= mu``.
    """
    inputs = {"n": n, "k": k, "q": q, "m": m, "e": e}
    log_pairs = math.log(n) + log_comb(n, k)
    alternatives = {}
    if gamma is not None:
        inputs["gamma"] = gamma
        log_g = log_pairs - m * q * gamma
        alternatives["gamma_form"] = min(1.0, math.exp(min(log_g, 0.0)))
        alternatives["gamma_form_log10"] = log_g / _LN10
    mu = q * (1.0 - q) ** k * m
    if e >= mu:
        return BoundReport("prob_design_failure", 1.0, 1.0, 0.0, inputs, alternatives)
    log_raw = log_pairs - (mu - e) ** 2 / (2.0 * mu)
    raw = math.exp(min(log_raw, 700.0))
    return BoundReport(
        "prob_design_failure",
        min(1.0, raw),
        raw,
        log_raw / _LN10,
        inputs,
        alternatives,
    )


def ks_guarantee_margin(params: KSDesignParams, k: int | None = None) -> int:
    """``n' - k k' - e``; the design is guaranteed ``(k, e)``-disjunct iff positive."""
    if k is None:
        k = params.k
    return params.nprime - k * params.kprime - params.e


def column_weight_stats(mc: ContactMatrix) -> WeightStats:
    w = mc.column_weights()
    return WeightStats(int(w.min()), int(w.max()), float(w.mean()))
