"""Command-line entry point: ``hypermod <subcommand>`` or ``python3 -m hypermod``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import bench
from .generators import DchsbmParams, HabcdParams, HsbmParams, gen_dchsbm, gen_habcd, gen_hsbm
from .hypercore import load_hypergraph, load_partition, save_hypergraph, save_partition
from .modularity import (aon_affinity, estimate_aon_params, q_aon, q_strict, q_symmetric,
                         q_wclique, q_wsc)
from .optimizers import aon_hmll, cnm_like, irmm, lsr
from .optimizers.aon import start_partition

CRITERIA = ("wclique", "strict", "wsc-strict", "wsc-majority", "wsc-linear", "aon", "sym")


def cmd_modularity(args) -> int:
    H = load_hypergraph(args.hypergraph)
    P = load_partition(args.partition, n=H.n)
    c = args.criterion
    if c == "wclique":
        value = q_wclique(H, P)
    elif c == "strict":
        value = q_strict(H, P)
    elif c.startswith("wsc-"):
        value = q_wsc(H, P, c[4:])
    else:
        init = (load_partition(args.init_partition, n=H.n) if args.init_partition
                else start_partition(H, "clique-louvain", seed=0))
        params = estimate_aon_params(H, init)
        value = q_aon(H, P, params) if c == "aon" else q_symmetric(H, P, aon_affinity(params))
    print(repr(float(value)))
    return 0


def cmd_cluster(args) -> int:
    H = load_hypergraph(args.hypergraph)
    if args.algo == "irmm":
        res = irmm(H, seed=args.seed)
    elif args.algo == "lsr":
        res = lsr(H, setting=args.wsc, seed=args.seed)
    elif args.algo == "cnm":
        res = cnm_like(H, seed=args.seed, max_steps=args.max_steps)
    else:
        res = aon_hmll(H, seed=args.seed)
    save_partition(res.partition, args.out)
    if args.log:
        with open(args.log, "w") as fh:
            for ev in res.events:
                fh.write(json.dumps(ev) + "\n")
    print(f"{res.criterion} {res.objective!r} K={res.partition.K} "
          f"iterations={res.iterations} converged={str(res.converged).lower()}")
    return 0


MODELS = {"hsbm": (HsbmParams, gen_hsbm), "dchsbm": (DchsbmParams, gen_dchsbm),
          "habcd": (HabcdParams, gen_habcd)}


def cmd_generate(args) -> int:
    with open(args.config) as fh:
        config = json.load(fh)
    config = config.get("params", config)
    params_cls, fn = MODELS[args.model]
    H, truth = fn(params_cls(**config), seed=args.seed)[:2]
    save_hypergraph(H, args.out)
    save_partition(truth, args.truth)
    return 0


def cmd_bench(args) -> int:
    if args.list:
        print("\n".join(bench.list_presets()))
        return 0
    if not args.scenario or not args.out:
        raise SystemExit("bench: --scenario and --out are required")
    config = bench.load_scenario(args.scenario)
    if args.replicates is not None:
        config.replicates = args.replicates
    if args.algorithms:
        config.algorithms = args.algorithms.split(",")
    if args.no_timing:
        config.record_time = False
    records = bench.run_scenario(config, master_seed=args.master_seed, jobs=args.jobs)
    bench.write_csv(records, args.out)
    if args.json:
        bench.write_jsonl(records, args.json)
    failed = sum(r.status != "ok" for r in records)
    print(f"{len(records)} runs written to {args.out}" + (f", {failed} failed" if failed else ""))
    return 0


def cmd_ari(args) -> int:
    a, b = load_partition(args.a), load_partition(args.b)
    print(repr(bench.ari(a, b)))
    return 0


def cmd_summarize(args) -> int:
    rows = bench.summarize(bench.read_csv(args.input))
    sys.stdout.write(bench.format_summary(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypermod", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("modularity", help="evaluate a modularity criterion")
    p.add_argument("--criterion", choices=CRITERIA, required=True)
    p.add_argument("--hypergraph", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--init-partition", help="partition used to estimate aon parameters")
    p.set_defaults(func=cmd_modularity)

    p = sub.add_parser("cluster", help="run a maximisation algorithm")
    p.add_argument("--algo", choices=("irmm", "lsr", "cnm", "aon"), required=True)
    p.add_argument("--hypergraph", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int)
    p.add_argument("--wsc", choices=("strict", "majority", "linear"), default="linear")
    p.add_argument("--out", required=True)
    p.add_argument("--log", help="write accepted steps as JSON lines")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("generate", help="draw a synthetic hypergraph")
    p.add_argument("--model", choices=tuple(MODELS), required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--truth", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="run a benchmark scenario")
    p.add_argument("--scenario", help="preset id or scenario JSON file")
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--out", help="results CSV")
    p.add_argument("--json", help="results as JSON lines, partitions included")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--replicates", type=int)
    p.add_argument("--algorithms", help="comma-separated subset of irmm,lsr,cnm,aon")
    p.add_argument("--no-timing", action="store_true",
                   help="write 0 for wall times so reruns give identical files")
    p.add_argument("--list", action="store_true", help="list shipped presets")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("ari", help="adjusted Rand index of two partition files")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_ari)

    p = sub.add_parser("summarize", help="per-scenario, per-algorithm summary of a results CSV")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_summarize)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"hypermod {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
