"""Louvain-style maximisation of the all-or-nothing modularity."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..hypercore import Hypergraph, Partition, clique_reduction
from ..modularity import AonParams, estimate_aon_params, q_aon
from ._work import AllOrNothingObjective, WorkingClustering, best_move
from .base import OptimizerResult, Timer, child_seed, resolve_options
from .louvain import louvain


@dataclass
class AonOptions:
    max_outer: int = 100
    seed: int = 0
    tol: float = 1e-10
    start_clusters: str = "clique-louvain"  # or "singletons"
    params: AonParams | None = None  # skips estimation when given
    reestimate: bool = False


def start_partition(H: Hypergraph, how: str, seed: int) -> Partition:
    if how == "clique-louvain":
        return louvain(clique_reduction(H.without_singletons()), seed=seed)
    if how == "singletons":
        return Partition.singletons(H.n)
    raise ValueError(f"unknown start_clusters {how!r}")


def aon_hmll(H: Hypergraph, opts: AonOptions | None = None, **overrides) -> OptimizerResult:
    """Maximise ``q_aon`` from singletons.

    Parameters are estimated once from ``start_clusters`` (Louvain on the
    clique reduction by default).  Each outer round runs node-move sweeps
    until one makes no move, then cluster-merge sweeps that move whole
    clusters into adjacent ones until none helps.  Rounds repeat until one
    changes nothing.
    """
    opts = resolve_options(AonOptions, opts, overrides)
    with Timer() as timer:
        start = None
        params = opts.params
        if params is None:
            start = start_partition(H, opts.start_clusters, child_seed(opts.seed, 0))
            params = estimate_aon_params(H, start)
        work = WorkingClustering.singletons(H)
        objective = AllOrNothingObjective.aon(work, params)
        rng = np.random.default_rng(child_seed(opts.seed, 1))
        current = q_aon(H, work.partition(), params)
        history, events = [current], []

        def log(kind, **info):
            history.append(current)
            events.append({"step": len(events), "kind": kind, "objective": current, **info})

        outer = 0
        converged = opts.max_outer == 0
        while outer < opts.max_outer:
            outer += 1
            changed = False
            while True:
                moves = 0
                for v in rng.permutation(work.n).tolist():
                    target, delta = best_move(objective.move_deltas(v), opts.tol)
                    if target is not None:
                        work.move(v, target)
                        current += delta
                        moves += 1
                        log("move", node=v + 1)
                if moves == 0:
                    break
                changed = True
            while True:
                merges = 0
                order = work.clusters()
                for i in rng.permutation(len(order)).tolist():
                    c = order[i]
                    if not work.members[c]:
                        continue
                    target, delta = best_move(objective.pair_merge_deltas(c), opts.tol)
                    if target is not None:
                        work.merge((c,), target)
                        current += delta
                        merges += 1
                        log("merge", cluster=c, into=target)
                if merges == 0:
                    break
                changed = True
            if not changed:
                converged = True
                break
            if opts.reestimate:
                params = estimate_aon_params(H, work.partition())
                objective = AllOrNothingObjective.aon(work, params)
                current = q_aon(H, work.partition(), params)
        final = work.partition()
    return OptimizerResult(
        partition=final, objective=q_aon(H, final, params), criterion="aon",
        iterations=outer, wall_time=timer.elapsed, seed=opts.seed, converged=converged,
        history=history, events=events, params=params, start_partition=start)
