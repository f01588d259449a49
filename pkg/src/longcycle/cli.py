"""Command-line front end.

Every subcommand prints one JSON report on stdout; notes go to stderr.  The
exit code is 0 whenever the command ran, whatever the answer, and nonzero on
bad input (2), oracle size refusal (3) or unreadable files (4).
"""

from __future__ import annotations

import argparse
import json
import math
import secrets
import sys
import time
from pathlib import Path

from . import __version__
from .colourful import BACKENDS, DEFAULT_TRIALS, shortest_colourful_cycle, configure_threads
from .errors import InvalidInputError, LongCycleError, SizeRefusal
from .graph import ColouredGraph, graph_from_dict
from .reductions import (DEFAULT_INNER, DEFAULT_OUTER, GeneralParams, bipartite_long_cycle,
                         check_params, general_long_cycle)

EXIT_INPUT = 2
EXIT_REFUSED = 3
EXIT_IO = 4


def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _length(x):
    """Cycle lengths are integers or ``inf``."""
    return x if isinstance(x, float) and math.isinf(x) else int(x)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {v}")
    return v


def load_instance(path, e=None) -> tuple[ColouredGraph, dict]:
    """Read an instance file; ``e`` overrides its specified edge."""
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: not valid JSON: {exc}") from None
    g = graph_from_dict(obj)
    if e is not None:
        v1, v2 = e
        if (min(v1, v2), max(v1, v2)) not in g.edge_index():
            raise InvalidInputError(f"--e ({v1},{v2}) is not an edge of the graph")
        g = g.with_specified(v1, v2)
    return g, obj


def _seed(args) -> tuple[int, bool]:
    if args.seed is not None:
        return args.seed, False
    seed = secrets.randbits(63)
    print(f"note: no --seed given, using {seed}", file=sys.stderr)
    return seed, True


def cmd_colourful(args) -> dict:
    g, _ = load_instance(args.instance)
    seed, generated = _seed(args)
    res = shortest_colourful_cycle(g, args.k, args.t, trials=args.trials, seed=seed, backend=args.backend)
    report = {
        "seed": seed, "seed_generated": generated,
        "params": {"k": args.k, "t": args.t, "trials": args.trials, "backend": args.backend},
        "answer": _length(res.length),
        "per_trial": {"lengths": [_length(x) for x in res.per_trial_lengths],
                      "exact_trials": sum(1 for x in res.per_trial_lengths if x == res.length)
                      if res.found else 0},
    }
    if args.plot_dir:
        from .report import plot_trial_lengths

        out = Path(args.plot_dir)
        out.mkdir(parents=True, exist_ok=True)
        report["figures"] = [str(plot_trial_lengths(res.per_trial_lengths, args.k, g.n,
                                                    out / "trial_lengths.png"))]
    return report


def _params(args) -> GeneralParams:
    return GeneralParams(args.alpha, args.beta, args.epsilon)


def cmd_long_cycle(args) -> dict:
    g, _ = load_instance(args.instance, args.e)
    seed, generated = _seed(args)
    params = _params(args)
    res = general_long_cycle(g, args.k, params, args.outer, args.inner, seed)
    return {
        "seed": seed, "seed_generated": generated,
        "params": {"k": args.k, "e": list(g.specified), "alpha": params.alpha, "beta": params.beta, "epsilon": params.epsilon,
                   "outer": args.outer, "inner": args.inner, "k_prime": params.k_prime(args.k),
                   "t_range": [params.t_range(args.k).start, params.t_range(args.k).stop - 1]},
        "answer": res.found,
        "component": res.component,
        "length": res.length,
        "per_trial": {"outer_trials_used": res.trials_used, "t": res.t, **res.details},
    }


def cmd_bipartite(args) -> dict:
    g, obj = load_instance(args.instance, args.e)
    seed, generated = _seed(args)
    parts = obj.get("bipartition")
    res = bipartite_long_cycle(g, args.k, trials=args.trials, seed=seed, parts=parts)
    return {
        "seed": seed, "seed_generated": generated,
        "params": {"k": args.k, "e": list(g.specified), "k_prime": res.k_prime, "trials": args.trials},
        "answer": res.found,
        "length": res.length,
        "per_trial": {"trials_used": res.trials_used},
    }


def cmd_oracle(args) -> dict:
    from . import oracle

    g, _ = load_instance(args.instance, args.e)
    report = {"params": {"mode": args.mode, "e": list(g.specified), "k": args.k, "t": args.t}}
    if args.mode == "shortest-colourful":
        if args.k is None or args.t is None:
            raise InvalidInputError("shortest-colourful needs --k and --t")
        report["answer"] = _length(oracle.oracle_shortest_colourful(g, args.k, args.t))
    elif args.mode == "longest-cycle":
        report["answer"] = oracle.oracle_longest_cycle_through(g)
    else:
        report.update(_cover_sum(g, args))
    return report


def _cover_sum(g: ColouredGraph, args) -> dict:
    """Lengths read off the sum over ``b`` of cycle-cover label sums of the labelled digraph."""
    from .colourful import arc_multigraph, lengths_from_polynomial, sample_config, trial_rng
    from .gf2k import field_for_order
    from .oracle import cycle_cover_label_sum
    from .poly import PolyRing

    if args.k is None:
        raise InvalidInputError("cover-sum needs --k")
    if g.n > 5:
        raise SizeRefusal(f"cover enumeration is limited to n <= 5, got n={g.n}")
    seed, generated = _seed(args)
    ctx = field_for_order(g.n)
    caps = (g.n,) * 3
    ring = PolyRing(ctx, caps)
    cfg = sample_config(g, args.k, ctx, trial_rng(seed))
    h = ring.zero
    for bits in range(1 << args.k):
        b = [(bits >> j) & 1 for j in range(args.k)]
        h = ring.add(h, cycle_cover_label_sum(arc_multigraph(g, cfg.with_b(b), ctx, caps), ring))
    ts = range(args.k + 1) if args.t is None else [args.t]
    return {"seed": seed, "seed_generated": generated,
            "answer": {str(t): _length(v) for t, v in lengths_from_polynomial(h, g.n, args.k, ts).items()},
            "nonzero_terms": len(h.terms())}


def cmd_check_params(args) -> dict:
    params = _params(args)
    ks = args.k or []
    base = check_params(params)
    return {
        "params": {"alpha": params.alpha, "beta": params.beta, "epsilon": params.epsilon},
        "answer": base.ok,
        "report": base.as_dict(),
        "per_k": [check_params(params, k).as_dict() for k in ks],
    }


def cmd_bench(args) -> dict:
    from .report import fitted_base, growth_factors, plot_scaling, time_scaling

    g, _ = load_instance(args.instance)
    seed, generated = _seed(args)
    ks = list(range(args.k_min, args.k_max + 1))
    if args.t > args.k_min:
        raise InvalidInputError(f"t={args.t} exceeds the smallest k={args.k_min}")
    rows = time_scaling(g, ks, args.t, args.trials, args.reps, seed)
    report = {
        "seed": seed, "seed_generated": generated,
        "params": {"k_range": [args.k_min, args.k_max], "t": args.t, "trials": args.trials, "reps": args.reps},
        "answer": {str(r["k"]): _length(r["lengths"][0]) for r in rows},
        "timing": {"median_s": [r["median"] for r in rows], "growth": growth_factors(rows),
                   "fitted_base": fitted_base(rows)},
    }
    if args.plot_dir:
        out = Path(args.plot_dir)
        out.mkdir(parents=True, exist_ok=True)
        report["figures"] = [str(plot_scaling(rows, out / "scaling.png"))]
    return report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="longcycle", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def with_edge(sp):
        sp.add_argument("--e", type=_positive, nargs=2, metavar=("V1", "V2"), default=None,
                        help="specified edge, overriding the one in the instance file")

    def with_seed(sp):
        sp.add_argument("--seed", type=_nonneg, default=None,
                        help="master seed; a random one is drawn and reported when omitted")

    sp = sub.add_parser("colourful", help="shortest k-colourful cycle of weight t through the specified edge")
    sp.add_argument("instance")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--t", type=_nonneg, default=0)
    sp.add_argument("--trials", type=_positive, default=DEFAULT_TRIALS)
    sp.add_argument("--backend", choices=BACKENDS, default="grid")
    sp.add_argument("--plot-dir", default=None, help="write a histogram of per-trial answers here")
    with_seed(sp)
    sp.set_defaults(func=cmd_colourful)

    defaults = GeneralParams()
    sp = sub.add_parser("long-cycle", help="is there a cycle of length >= k through the specified edge?")
    sp.add_argument("instance")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--alpha", type=float, default=defaults.alpha)
    sp.add_argument("--beta", type=float, default=defaults.beta)
    sp.add_argument("--epsilon", type=float, default=defaults.epsilon)
    sp.add_argument("--outer", type=_nonneg, default=DEFAULT_OUTER)
    sp.add_argument("--inner", type=_positive, default=DEFAULT_INNER)
    with_edge(sp)
    with_seed(sp)
    sp.set_defaults(func=cmd_long_cycle)

    sp = sub.add_parser("bipartite", help="long-cycle decision on a bipartite graph")
    sp.add_argument("instance")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--trials", type=_positive, default=DEFAULT_INNER)
    with_edge(sp)
    with_seed(sp)
    sp.set_defaults(func=cmd_bipartite)

    sp = sub.add_parser("oracle", help="exact brute-force answers for small instances")
    sp.add_argument("instance")
    sp.add_argument("--mode", choices=("shortest-colourful", "longest-cycle", "cover-sum"), required=True)
    sp.add_argument("--k", type=_positive, default=None)
    sp.add_argument("--t", type=_nonneg, default=None)
    with_edge(sp)
    with_seed(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("check-params", help="evaluate the sampling constants")
    sp.add_argument("--alpha", type=float, default=defaults.alpha)
    sp.add_argument("--beta", type=float, default=defaults.beta)
    sp.add_argument("--epsilon", type=float, default=defaults.epsilon)
    sp.add_argument("--k", type=_positive, action="append", help="also report margins at this k (repeatable)")
    sp.set_defaults(func=cmd_check_params)

    sp = sub.add_parser("bench", help="time the colourful solver over a range of k and plot it")
    sp.add_argument("instance")
    sp.add_argument("--k-min", type=_positive, default=3)
    sp.add_argument("--k-max", type=_positive, default=8)
    sp.add_argument("--t", type=_nonneg, default=0)
    sp.add_argument("--trials", type=_positive, default=8)
    sp.add_argument("--reps", type=_positive, default=3)
    sp.add_argument("--plot-dir", default=None, help="write scaling.png here")
    with_seed(sp)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    argv = list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    try:
        configure_threads()
        body = args.func(args)
    except SizeRefusal as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (LongCycleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    report = {"command": args.command, "argv": argv, **body,
              "wall_time_s": round(time.perf_counter() - start, 6)}
    print(json.dumps(_jsonable(report), sort_keys=False))
    return 0


if __name__ == "__main__":
    sys.exit(main())
