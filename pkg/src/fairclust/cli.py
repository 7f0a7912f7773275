"""
Command line interface for fairclust

Subcommands:
  fairify      closest fair clustering of a clustering file
  dist         pair-counting distance between two clustering files
  check        fairness or p-divisibility of a clustering file
  oracle       exact optima for small instances
  cc           fair correlation clustering
  consensus    fair consensus clustering
  gen          instance generators (random, hardness, correlation)
  bench        benchmark suites as CSV on stdout
  config       show the active settings

Exit codes: 0 success, 1 invalid input or failed check, 2 unreadable or malformed file.
"""
import argparse
import logging
import sys
import time
from typing import List, Optional, Sequence

from . import __version__
from .bench import SUITES, hardness_suite, ratio_suite, scaling_suite
from .config import (
    BENCH_WORKERS,
    CSV_LINE_TERMINATOR,
    DEFAULT_SEED,
    current_settings,
    get_log_level,
    validate_config,
)
from .consensus import ConsensusStrategy, consensus_objective, fair_consensus, parse_norm
from .core import pair_distance
from .correlation import Baseline, cc_cost, fairify_cc
from .errors import FileFormatError, InvariantError, ValidationError
from .fairness import is_fair, is_p_divisible, reduced_profile, unfair_clusters
from .instances import (
    gen_correlation,
    gen_hardness,
    gen_random,
    gen_random_three_partition,
    read_clustering,
    read_consensus,
    read_correlation,
    write_clustering,
    write_correlation,
)
from .instances.generators import EQUI, GEOMETRIC, UNIFORM
from .logging_config import FairclustLogger, get_logger, log_exception, log_operation, setup_logging
from .oracle import exact_closest_fair, exact_closest_pdc, exact_fair_cc, exact_fair_consensus
from .pipeline import FairifyMode, fairify

logger = get_logger(__name__)


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _ratio(text: str):
    return EQUI if text == EQUI else _int_list(text)


# -- command handlers --------------------------------------------------------------------

def cmd_fairify(args) -> int:
    d, colors = read_clustering(args.input)
    result = fairify(d, colors, FairifyMode(args.mode))
    write_clustering(args.output, result, colors)
    print(f"distance {pair_distance(d, result)}")
    return 0


def cmd_dist(args) -> int:
    a, _ = read_clustering(args.a)
    b, _ = read_clustering(args.b)
    print(pair_distance(a, b))
    return 0


def cmd_check(args) -> int:
    c, colors = read_clustering(args.file)
    if args.pdc:
        if is_p_divisible(c, colors, reduced_profile(colors)):
            print("p-divisible")
            return 0
        print("not p-divisible")
        return 1
    if is_fair(c, colors):
        print("fair")
        return 0
    print(f"unfair: clusters {' '.join(map(str, unfair_clusters(c, colors)))}")
    return 1


def cmd_oracle(args) -> int:
    if args.problem == "closest-fair":
        d, colors = read_clustering(args.file)
        best, value = exact_closest_fair(d, colors)
    elif args.problem == "closest-pdc":
        d, colors = read_clustering(args.file)
        best, value = exact_closest_pdc(d, colors, reduced_profile(colors))
    elif args.problem == "fair-cc":
        if not args.colors:
            raise ValidationError("fair-cc needs --colors FILE")
        inst = read_correlation(args.file)
        _, colors = read_clustering(args.colors)
        best, value = exact_fair_cc(inst, colors)
    else:
        inst, colors = read_consensus(args.file, parse_norm(args.norm))
        best, value = exact_fair_consensus(inst, colors)
    print(value)
    if args.output:
        write_clustering(args.output, best, colors)
    return 0


def cmd_cc(args) -> int:
    inst = read_correlation(args.graph)
    provided, colors = read_clustering(args.colors)
    if args.action == "cost":
        print(cc_cost(inst, provided))
        return 0
    baseline = provided if args.baseline == Baseline.PROVIDED.value else Baseline(args.baseline)
    result = fairify_cc(inst, colors, baseline, seed=args.seed)
    write_clustering(args.output, result, colors)
    print(f"cost {cc_cost(inst, result)}")
    return 0


def cmd_consensus(args) -> int:
    inst, colors = read_consensus(args.file, parse_norm(args.norm))
    result = fair_consensus(inst, colors, ConsensusStrategy(args.strategy), workers=args.workers)
    write_clustering(args.output, result, colors)
    print(f"objective {consensus_objective(inst, result):g}")
    return 0


def cmd_gen(args) -> int:
    if args.kind == "random":
        d, colors = gen_random(args.n, args.k, args.ratio, args.law, args.seed, args.clusters)
        write_clustering(args.output, d, colors)
        print(f"n {d.n} k {colors.k} clusters {d.num_clusters}")
        return 0

    if args.kind == "correlation":
        inst, colors, planted = gen_correlation(args.n, args.k, args.noise, args.seed, args.clusters)
        write_correlation(args.output, inst)
        write_clustering(args.colors_output, planted, colors)
        print(f"nodes {inst.n} plus-edges {len(inst.plus_edges)}")
        return 0

    partition = None
    if args.random_yes:
        values, partition = gen_random_three_partition(args.random_yes, args.seed)
    elif args.values:
        values = args.values
    else:
        raise ValidationError("gen hardness needs --values or --random-yes")
    instance = gen_hardness(values, args.k, partition)
    write_clustering(args.output, instance.clustering, instance.colors)
    print(f"values {','.join(map(str, instance.values))}")
    print(f"T {instance.target} tau {instance.tau}")
    if instance.certificate is None:
        print("certificate none")
    else:
        print(f"certificate distance {pair_distance(instance.clustering, instance.certificate)}")
        if args.certificate:
            write_clustering(args.certificate, instance.certificate, instance.colors)
    return 0


def cmd_bench(args) -> int:
    if args.suite == "scaling":
        frame = scaling_suite(args.sizes, args.k or 8, args.seed)
    elif args.suite == "ratio":
        k = args.k or (len(args.profile) if args.profile else 2)
        frame = ratio_suite(args.n, k, args.instances, args.seed, args.workers, args.profile)
    else:
        frame = hardness_suite(args.d, args.ks, args.instances, args.seed, args.workers)
    frame.to_csv(sys.stdout, index=False, lineterminator=CSV_LINE_TERMINATOR)
    return 0


def cmd_config(args) -> int:
    for key, value in current_settings().items():
        print(f"{key:<22} {value}")
    return 0 if validate_config() else 1


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fairclust", description="Closest fair clustering toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR (default from FAIRCLUST_LOG_LEVEL)")
    parser.add_argument("--log-file", action="store_true", help="Also write a daily log file under ./logs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fairify", help="Closest fair clustering of a clustering file")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--mode", choices=[m.value for m in FairifyMode], default=FairifyMode.AUTO.value)
    p.set_defaults(handler=cmd_fairify)

    p = sub.add_parser("dist", help="Pair-counting distance between two clustering files")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(handler=cmd_dist)

    p = sub.add_parser("check", help="Check fairness or p-divisibility")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--fair", action="store_true")
    group.add_argument("--pdc", action="store_true")
    p.add_argument("file")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("oracle", help="Exact optimum by exhaustive search (small n)")
    p.add_argument("problem", choices=["closest-fair", "closest-pdc", "fair-cc", "fair-consensus"])
    p.add_argument("file", help="Clustering, correlation or consensus file")
    p.add_argument("--colors", help="Clustering file supplying the colors (fair-cc)")
    p.add_argument("--norm", default="1", help="Consensus norm: a positive integer or 'center'")
    p.add_argument("--output", "-o", help="Write the optimal clustering here")
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("cc", help="Fair correlation clustering")
    p.add_argument("action", choices=["fairify", "cost"])
    p.add_argument("graph", help="Correlation file")
    p.add_argument("colors", help="Clustering file; its cluster column is the provided baseline or the clustering to cost")
    p.add_argument("output", nargs="?", help="Output clustering file (fairify)")
    p.add_argument("--baseline", choices=[b.value for b in Baseline], default=Baseline.PIVOT.value)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(handler=cmd_cc)

    p = sub.add_parser("consensus", help="Fair consensus clustering")
    p.add_argument("file", help="Consensus file")
    p.add_argument("output")
    p.add_argument("--norm", default="1", help="A positive integer or 'center'")
    p.add_argument("--strategy", choices=[s.value for s in ConsensusStrategy], default=ConsensusStrategy.BEST_INPUT.value)
    p.add_argument("--workers", type=int, default=BENCH_WORKERS)
    p.set_defaults(handler=cmd_consensus)

    p = sub.add_parser("gen", help="Generate instances")
    gen = p.add_subparsers(dest="kind", required=True)

    g = gen.add_parser("random", help="Random colored clustering")
    g.add_argument("output")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--ratio", type=_ratio, default=EQUI, help="'equi' or a profile such as 3,2")
    g.add_argument("--law", choices=[UNIFORM, GEOMETRIC], default=UNIFORM)
    g.add_argument("--clusters", type=int, default=None)
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.set_defaults(handler=cmd_gen)

    g = gen.add_parser("hardness", help="3-Partition reduction instance")
    g.add_argument("output")
    g.add_argument("--values", type=_int_list, help="The multiset, e.g. 5,6,7,5,6,7")
    g.add_argument("--random-yes", type=int, metavar="D", help="Draw a random YES multiset of D values")
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--certificate", help="Write the YES certificate clustering here")
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.set_defaults(handler=cmd_gen)

    g = gen.add_parser("correlation", help="Planted correlation-clustering graph")
    g.add_argument("output", help="Correlation file")
    g.add_argument("colors_output", help="Clustering file with the colors and the planted clusters")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--noise", type=float, default=0.1)
    g.add_argument("--clusters", type=int, default=None)
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.set_defaults(handler=cmd_gen)

    p = sub.add_parser("bench", help="Benchmark suites, CSV on stdout")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--sizes", type=_int_list, default=[200000, 400000, 800000, 1600000],
                   help="n values for scaling")
    p.add_argument("--n", type=int, default=8, help="Points per ratio instance (exhaustive oracle)")
    p.add_argument("--k", type=int, default=None, help="Colors (default 8 for scaling, 2 for ratio)")
    p.add_argument("--profile", type=_int_list, default=None, help="Color profile for ratio, default equal classes")
    p.add_argument("--instances", type=int, default=20)
    p.add_argument("--d", type=int, default=6, help="3-Partition size for hardness")
    p.add_argument("--ks", type=_int_list, default=[3, 5], help="Color counts for hardness")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=BENCH_WORKERS)
    p.add_argument("--emit", choices=["csv"], default="csv")
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("config", help="Show the active settings")
    p.set_defaults(handler=cmd_config)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = getattr(logging, args.log_level.upper(), None) if args.log_level else get_log_level()
    FairclustLogger.reset()
    setup_logging(log_level=level or logging.INFO, log_to_file=args.log_file)

    if args.command == "cc" and args.action == "fairify" and not args.output:
        parser.error("cc fairify needs an output file")

    operation = args.command if args.command != "gen" else f"gen {args.kind}"
    start = time.perf_counter()
    try:
        code = args.handler(args)
    except (ValidationError, InvariantError) as e:
        log_exception(logger, e, context=operation)
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (FileFormatError, OSError) as e:
        log_exception(logger, e, context=operation)
        print(f"error: {e}", file=sys.stderr)
        return 2
    duration_ms = (time.perf_counter() - start) * 1000
    log_operation(logger, operation, "success" if code == 0 else "warning", duration_ms, exit_code=code)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
