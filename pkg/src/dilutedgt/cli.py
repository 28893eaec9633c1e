"""Command-line entry point.

Exit codes: 0 success, 1 infeasible design parameters, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analysis, designs, experiments, gtmat
from .decoding import distance_decode
from .designs import InfeasibleParameters
from .model import ChannelSpec, SparseSignal

EXIT_OK, EXIT_INFEASIBLE, EXIT_MALFORMED = 0, 1, 2


def _list(conv):
    def parse(text):
        try:
            return tuple(conv(t) for t in text.split(",") if t.strip())
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad comma-separated list: {text!r}")

    return parse


def _design_args(p, single=True):
    p.add_argument("--design", choices=("bernoulli", "ks"), default="bernoulli")
    p.add_argument("--n", type=int if single else _list(int), required=True)
    p.add_argument("--k", type=int if single else _list(int), required=True)
    p.add_argument("--p", type=float if single else _list(float), default=1.0 if single else (1.0,))
    p.add_argument("--m", type=int if single else _list(int), default=None)
    p.add_argument("--alpha", type=float, default=designs.DEFAULT_ALPHA)
    p.add_argument("--delta", type=float, default=designs.DEFAULT_DELTA)
    p.add_argument("--seed", type=int, default=0)


def _derive(args):
    if args.design == "ks":
        return designs.derive_ks_params(args.n, args.k, args.p, args.delta)
    return designs.derive_prob_params(
        args.n, args.k, args.p, args.alpha, args.delta, m_override=args.m
    )


def _build(args, params):
    if args.design == "ks":
        return designs.build_kautz_singleton(params)
    return designs.build_probabilistic(params, args.seed)


def _emit(text, out):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_design(args):
    params = _derive(args)
    mc = _build(args, params)
    print(f"# m={params.m} e={params.e}", file=sys.stderr)
    _emit(gtmat.dumps(mc), args.out)


def cmd_verify(args):
    mc = gtmat.load_matrix(args.matrix)
    print(analysis.verify_disjunct(mc, args.k, args.e).to_json())


def cmd_decode(args):
    mc = gtmat.load_matrix(args.matrix)
    y = gtmat.parse_outcome(args.y)
    res = distance_decode(mc, y, args.e, args.k)
    x = SparseSignal.from_indices(mc.n, res.candidates)
    print(gtmat.format_signal(x))
    if res.oversized:
        print(f"# oversized: {len(res.candidates)} candidates > k={args.k}", file=sys.stderr)


def cmd_simulate(args):
    if args.matrix:
        mc = gtmat.load_matrix(args.matrix)
        if args.e is None:
            raise SystemExit("simulate --matrix needs --e")
        e = args.e
    else:
        params = _derive(args)
        mc = _build(args, params)
        e = params.e if args.e is None else args.e
    if args.channel == "stochastic":
        ch = ChannelSpec.stochastic(args.p)
    elif args.channel == "adversarial":
        ch = ChannelSpec.adversarial(e, args.strategy)
    else:
        ch = ChannelSpec.noiseless()
    rec = experiments.run_trial(mc, args.k, e, ch, args.seed)
    x, y = experiments.draw_instance(mc, args.k, ch, args.seed)
    res = distance_decode(mc, y, e, args.k)
    out = {
        "m": mc.m,
        "n": mc.n,
        "e": e,
        "truth": list(x.one_based),
        "outcome_weight": int(y.bits.sum()),
        "candidates": [i + 1 for i in res.candidates],
        "exact": rec.exact,
        "false_pos": rec.false_pos,
        "false_neg": rec.false_neg,
        "decode_micros": rec.decode_micros,
    }
    print(json.dumps(out))


def cmd_sweep(args):
    spec = experiments.SweepSpec(
        design=args.design,
        n=args.n,
        k=args.k,
        p=args.p,
        m=args.m,
        c=args.c,
        trials=args.trials,
        base_seed=args.seed,
        channel=args.channel,
        strategy=args.strategy,
        alpha=args.alpha,
        delta=args.delta,
        fresh_matrix_per_trial=args.fresh_matrix,
    )
    _emit(experiments.sweep_csv(experiments.run_sweep(spec)), args.out)


def cmd_bounds(args):
    params = _derive(args)
    if args.design == "ks":
        q, m = 1.0 / params.nprime, params.m
        print(json.dumps({"ks_margin": analysis.ks_guarantee_margin(params),
                          "m": m, "e": params.e}))
    else:
        q, m = params.q, params.m
        print(analysis.prob_design_failure_bound(
            params.n, params.k, q, m, params.e, params.gamma).to_json())
    print(analysis.prop2_stochastic_error_bound(q, m, params.n, params.p, params.delta).to_json())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dilutedgt", description="Group testing with diluted measurements."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="build a contact matrix and emit GTMAT")
    _design_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("verify", help="exhaustive (k,e)-disjunctness report")
    p.add_argument("matrix")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--e", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decode", help="distance-decode an outcome vector")
    p.add_argument("matrix")
    p.add_argument("--y", required=True, help="outcome as a 0/1 string")
    p.add_argument("--e", type=int, default=0)
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="run one verbose trial")
    _design_args(p)
    p.add_argument("--matrix", help="use a GTMAT file instead of building a design")
    p.add_argument("--e", type=int, default=None)
    p.add_argument("--channel", choices=("stochastic", "adversarial", "noiseless"),
                   default="stochastic")
    p.add_argument("--strategy", choices=("none", "random", "max-random"), default="random")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="Monte Carlo grid, CSV output")
    _design_args(p, single=False)
    p.add_argument("--c", type=_list(float), default=(1.0,),
                   help="multipliers on the derived m (ignored when --m is given)")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--channel", choices=("stochastic", "adversarial", "noiseless"),
                   default="stochastic")
    p.add_argument("--strategy", choices=("none", "random", "max-random"), default="random")
    p.add_argument("--fresh-matrix", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bounds", help="analytic failure bounds for a design")
    _design_args(p)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    try:
        args.func(args)
    except InfeasibleParameters as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
