"""Contact-matrix designs: i.i.d. Bernoulli and Kautz-Singleton over Reed-Solomon."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gf
from .model import ContactMatrix, DesignMeta, as_rng

DEFAULT_ALPHA = 0.2
DEFAULT_DELTA = 0.05


class InfeasibleParameters(ValueError):
    """No design satisfies the requested (n, k, p, ...) combination."""


@dataclass(frozen=True)
class ProbDesignParams:
    n: int
    k: int
    p: float
    alpha: float
    delta: float
    q: float
    m: int
    e: int
    gamma: float


@dataclass(frozen=True)
class KSDesignParams:
    n: int
    k: int
    p: float
    delta: float
    nprime: int
    kprime: int
    m: int
    e: int


def _check_common(n, k, p):
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    if not 0.0 < p <= 1.0:
        raise ValueError(f"contamination probability must be in (0, 1], got {p}")


def gamma_exponent(p: float, alpha: float, delta: float) -> float:
    """Per-measurement exponent ``(3**-alpha - (1-p)(1+3 delta))**2 / 2**(1-alpha)``."""
    return (3.0**-alpha - (1.0 - p) * (1.0 + 3.0 * delta)) ** 2 / 2.0 ** (1.0 - alpha)


def prob_tolerance(p: float, delta: float, q: float, m: int) -> int:
    return math.ceil((1.0 - p) * (1.0 + 3.0 * delta) * q * m)


def prob_rows_bound(n: int, k: int, alpha: float, gamma: float) -> float:
    """``k**2 ln(n/k) / (alpha gamma)``, the row count the union bound needs."""
    return k * k * math.log(n / k) / (alpha * gamma)


def derive_prob_params(
    n: int,
    k: int,
    p: float,
    alpha: float = DEFAULT_ALPHA,
    delta: float = DEFAULT_DELTA,
    m_override: int | None = None,
    m_multiplier: float = 1.0,
) -> ProbDesignParams:
    """Parameters of the Bernoulli design.

    ``m`` is ``ceil(m_multiplier * k**2 ln(n/k) / (alpha gamma))`` unless
    ``m_override`` is given.  Raises :class:`InfeasibleParameters` when
    ``3**-alpha <= (1-p)(1+3 delta)``: the expected number of private rows
    per column would not exceed the tolerance, and the Chernoff argument
    gives nothing.
    """
    _check_common(n, k, p)
    if alpha <= 0 or delta <= 0:
        raise ValueError("alpha and delta must be positive")
    q = alpha / k
    if q > 1.0:
        raise ValueError(f"entry probability alpha/k = {q} exceeds 1")
    margin = 3.0**-alpha - (1.0 - p) * (1.0 + 3.0 * delta)
    if margin <= 0:
        raise InfeasibleParameters(
            f"3^-alpha = {3.0**-alpha:.6g} <= (1-p)(1+3*delta) = "
            f"{(1.0 - p) * (1.0 + 3.0 * delta):.6g}; decrease alpha or delta"
        )
    gamma = gamma_exponent(p, alpha, delta)
    if m_override is not None:
        if m_override < 1:
            raise ValueError(f"m must be positive, got {m_override}")
        m = int(m_override)
    else:
        m = max(1, math.ceil(m_multiplier * prob_rows_bound(n, k, alpha, gamma)))
    return ProbDesignParams(
        n=n,
        k=k,
        p=p,
        alpha=alpha,
        delta=delta,
        q=q,
        m=m,
        e=prob_tolerance(p, delta, q, m),
        gamma=gamma,
    )


def build_probabilistic(params: ProbDesignParams, rng) -> ContactMatrix:
    """Each entry is 1 independently with probability ``params.q``.

    Pass an integer seed to have it recorded in the design metadata.
    """
    seed = int(rng) if isinstance(rng, (int, np.integer)) else None
    gen = as_rng(rng)
    dense = gen.random((params.m, params.n)) < params.q
    meta = DesignMeta("bernoulli", (params.alpha, params.delta, params.q), seed)
    return ContactMatrix(dense, meta)


def ks_tolerance(p: float, delta: float, nprime: int) -> int:
    return math.ceil((1.0 - p) * (1.0 + delta) * nprime)


def derive_ks_params(
    n: int,
    k: int,
    p: float,
    delta: float = DEFAULT_DELTA,
    max_order: int = gf.MAX_ORDER,
) -> KSDesignParams:
    """Smallest field order ``n'`` (then smallest ``k'``) meeting ``n' - k k' > e``."""
    _check_common(n, k, p)
    if delta <= 0:
        raise ValueError("delta must be positive")
    rate = (1.0 - p) * (1.0 + delta)
    if rate >= 1.0:
        raise InfeasibleParameters(
            f"(1-p)(1+delta) = {rate:.6g} >= 1, so e >= n' and n' - k*k' > e never holds"
        )
    for q in gf.prime_powers(max_order):
        kprime = 1
        while q**kprime < n:
            kprime += 1
        if kprime > q:
            continue
        e = ks_tolerance(p, delta, q)
        if q - k * kprime > e:
            return KSDesignParams(n, k, p, delta, q, kprime, q * q, e)
    raise InfeasibleParameters(
        f"no prime power n' <= {max_order} satisfies n' - k*k' > ceil((1-p)(1+delta)n') "
        f"for n={n}, k={k}, p={p}, delta={delta}"
    )


def kautz_singleton_matrix(nprime: int, kprime: int, n: int | None = None) -> np.ndarray:
    """Dense ``(n'^2, n)`` concatenation of RS(n', k') with the identity inner code.

    Column ``j`` encodes the ``j``-th message in lexicographic order; symbol
    ``c`` in outer position ``i`` lights row ``i * n' + c``.
    """
    code = gf.RSCode(gf.field(nprime), kprime)
    if n is None:
        n = code.n_messages
    codewords = gf.rs_encode(code, gf.enumerate_messages(code, n))
    dense = np.zeros((nprime * nprime, n), dtype=bool)
    rows = np.arange(nprime)[None, :] * nprime + codewords
    dense[rows, np.arange(n)[:, None]] = True
    return dense


def build_kautz_singleton(params: KSDesignParams) -> ContactMatrix:
    dense = kautz_singleton_matrix(params.nprime, params.kprime, params.n)
    meta = DesignMeta("ks", (params.nprime, params.kprime, params.delta))
    return ContactMatrix(dense, meta)
