"""Seeded Monte Carlo trials and parameter sweeps.

Seeds
-----
Per-trial seeds come from a SplitMix64-style mixer, so a sweep is
reproducible from its base seed on any platform::

    mix64(x)   = splitmix64 finalizer of (x + 0x9E3779B97F4A7C15) mod 2**64
    trial_seed = mix64(mix64(mix64(base) ^ cell) ^ trial)

The shared matrix of a cell uses ``trial = MATRIX_TAG``; a fresh matrix for
one trial uses ``mix64(trial_seed ^ MATRIX_TAG)``.
"""

from __future__ import annotations

import csv
import io
import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from . import analysis, designs
from .decoding import distance_decode, evaluate_decode
from .designs import InfeasibleParameters
from .model import ChannelSpec, ContactMatrix, Outcome, SparseSignal, end_to_end_sample

MASK64 = (1 << 64) - 1
MATRIX_TAG = MASK64

CSV_COLUMNS = (
    "design",
    "n",
    "k",
    "m",
    "p",
    "e",
    "trials",
    "success_rate",
    "mean_fp",
    "mean_fn",
    "bound_prop2",
    "bound_pf",
)


def mix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(base: int, cell: int, trial: int) -> int:
    return mix64(mix64(mix64(base & MASK64) ^ (cell & MASK64)) ^ (trial & MASK64))


@dataclass(frozen=True)
class TrialRecord:
    seed: int
    design: str
    n: int
    k: int
    m: int
    p: float
    e: int
    exact: bool
    false_pos: int
    false_neg: int
    decode_micros: float = field(default=0.0, compare=False)


def draw_instance(mc, k, channel, seed, *, support=None, outcome=None, materialize=False):
    """The signal and outcome a trial with this seed sees."""
    rng = np.random.default_rng(seed)
    if support is None:
        support = rng.choice(mc.n, size=k, replace=False)
    x = SparseSignal.from_indices(mc.n, support)
    if outcome is None:
        _, outcome = end_to_end_sample(mc, x, channel, rng, materialize=materialize)
    return x, outcome


def run_trial(
    mc: ContactMatrix,
    k: int,
    e: int,
    channel: ChannelSpec,
    seed: int,
    *,
    support=None,
    outcome: Outcome | None = None,
    materialize: bool = False,
) -> TrialRecord:
    """Draw a random ``k``-subset, push it through ``channel`` and decode.

    ``support`` (0-based) and ``outcome`` override the random draws; they
    exist for replaying fixed scenarios.
    """
    x, outcome = draw_instance(
        mc, k, channel, seed, support=support, outcome=outcome, materialize=materialize
    )
    t0 = time.perf_counter_ns()
    result = distance_decode(mc, outcome, e, k)
    micros = (time.perf_counter_ns() - t0) / 1000.0
    ev = evaluate_decode(x, result)
    design = mc.design_meta.kind if mc.design_meta is not None else "none"
    return TrialRecord(
        seed=int(seed),
        design=design,
        n=mc.n,
        k=k,
        m=mc.m,
        p=channel.p,
        e=int(e),
        exact=ev.exact,
        false_pos=ev.false_pos,
        false_neg=ev.false_neg,
        decode_micros=micros,
    )


@dataclass(frozen=True)
class SweepSpec:
    """A grid of experiment cells.

    For the Bernoulli design the last axis is ``m`` when given, otherwise
    the multiplier ``c`` on the derived row bound.  Kautz-Singleton cells
    have no free ``m`` and ignore that axis.
    """

    design: str = "bernoulli"
    n: tuple = (100,)
    k: tuple = (2,)
    p: tuple = (1.0,)
    m: tuple | None = None
    c: tuple = (1.0,)
    trials: int = 100
    base_seed: int = 0
    channel: str = "stochastic"
    strategy: str = "random"
    alpha: float = designs.DEFAULT_ALPHA
    delta: float = designs.DEFAULT_DELTA
    fresh_matrix_per_trial: bool = False

    def __post_init__(self):
        if self.design not in ("bernoulli", "ks"):
            raise ValueError(f"unknown design {self.design!r}")
        if self.channel not in ("stochastic", "adversarial", "noiseless"):
            raise ValueError(f"unknown channel {self.channel!r}")
        for name in ("n", "k", "p", "c"):
            if len(getattr(self, name)) == 0:
                raise ValueError(f"grid {name!r} is empty")
        if self.m is not None and len(self.m) == 0:
            raise ValueError("grid 'm' is empty")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")

    def cells(self):
        if self.design == "ks":
            last = [None]
        elif self.m is not None:
            last = [("m", v) for v in self.m]
        else:
            last = [("c", v) for v in self.c]
        return list(itertools.product(self.n, self.k, self.p, last))


@dataclass
class CellResult:
    design: str
    n: int
    k: int
    p: float
    m: int | None = None
    e: int | None = None
    trials: int = 0
    success_rate: float | None = None
    mean_fp: float | None = None
    mean_fn: float | None = None
    bound_prop2: float | None = None
    bound_pf: float | None = None
    infeasible: str | None = None
    records: list = field(default_factory=list, repr=False)

    def csv_row(self) -> list[str]:
        def f(v):
            return "" if v is None else format(v, ".10g")

        if self.infeasible is not None:
            return [self.design, str(self.n), str(self.k), "", f(self.p), "",
                    str(self.trials), "infeasible", "", "", "", ""]
        return [
            self.design,
            str(self.n),
            str(self.k),
            str(self.m),
            f(self.p),
            str(self.e),
            str(self.trials),
            f(self.success_rate),
            f(self.mean_fp),
            f(self.mean_fn),
            f(self.bound_prop2),
            f(self.bound_pf),
        ]


def _cell_design(spec: SweepSpec, n, k, p, last):
    """Returns ``(params, builder(seed), bound_prop2, bound_pf)``."""
    if spec.design == "ks":
        params = designs.derive_ks_params(n, k, p, spec.delta)
        mc = designs.build_kautz_singleton(params)
        prop2 = analysis.prop2_stochastic_error_bound(
            1.0 / params.nprime, params.m, n, p, spec.delta
        ).value
        pf = 0.0 if analysis.ks_guarantee_margin(params, k) > 0 else 1.0
        return params, (lambda seed: mc), prop2, pf
    axis, val = last
    if axis == "m":
        params = designs.derive_prob_params(n, k, p, spec.alpha, spec.delta, m_override=val)
    else:
        params = designs.derive_prob_params(n, k, p, spec.alpha, spec.delta, m_multiplier=val)
    prop2 = analysis.prop2_stochastic_error_bound(
        params.q, params.m, n, p, spec.delta
    ).value
    pf = analysis.prob_design_failure_bound(n, k, params.q, params.m, params.e).value
    return params, (lambda seed: designs.build_probabilistic(params, seed)), prop2, pf


def _channel(spec: SweepSpec, p: float, e: int) -> ChannelSpec:
    if spec.channel == "noiseless":
        return ChannelSpec.noiseless()
    if spec.channel == "adversarial":
        return ChannelSpec.adversarial(e, spec.strategy)
    return ChannelSpec.stochastic(p)


def run_sweep(spec: SweepSpec, keep_records: bool = False) -> list[CellResult]:
    """Run every cell of ``spec`` in grid order."""
    out = []
    for cell, (n, k, p, last) in enumerate(spec.cells()):
        res = CellResult(spec.design, n, k, p, trials=spec.trials)
        try:
            params, build, prop2, pf = _cell_design(spec, n, k, p, last)
        except InfeasibleParameters as exc:
            res.infeasible = str(exc)
            out.append(res)
            continue
        res.m, res.e = params.m, params.e
        res.bound_prop2, res.bound_pf = prop2, pf
        channel = _channel(spec, p, params.e)
        shared = None
        if not spec.fresh_matrix_per_trial:
            shared = build(derive_seed(spec.base_seed, cell, MATRIX_TAG))
        exact = fp = fn = 0
        for t in range(spec.trials):
            seed = derive_seed(spec.base_seed, cell, t)
            mc = shared if shared is not None else build(mix64(seed ^ MATRIX_TAG))
            rec = run_trial(mc, k, params.e, channel, seed)
            exact += rec.exact
            fp += rec.false_pos
            fn += rec.false_neg
            if keep_records:
                res.records.append(rec)
        res.success_rate = exact / spec.trials
        res.mean_fp = fp / spec.trials
        res.mean_fn = fn / spec.trials
        out.append(res)
    return out


def sweep_csv(results) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in results:
        writer.writerow(r.csv_row())
    return buf.getvalue()


def write_sweep_csv(results, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(sweep_csv(results))
