"""Stochastic CNM-like agglomeration for strict modularity."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..hypercore import Hypergraph
from ..modularity import q_strict
from ._work import AllOrNothingObjective, WorkingClustering
from .base import OptimizerResult, Timer, resolve_options


@dataclass
class CnmOptions:
    max_steps: int | None = None  # default 2 * |E|
    seed: int = 0
    tol: float = 1e-12


class SplitEdges:
    """Split hyperedges grouped by the set of clusters they touch.

    Keeps a swap-remove list for uniform draws and, per cluster set, the
    summed inside coefficient of edges touching exactly that set.
    """

    def __init__(self, work: WorkingClustering, edge_coef):
        self.work = work
        self.edge_coef = edge_coef
        self.key = [frozenset(work.labels[u] for u in e) for e in work.edges]
        self.by_key: dict[frozenset, float] = {}
        self.items: list[int] = []
        self.pos: dict[int, int] = {}
        for j, k in enumerate(self.key):
            if len(k) > 1:
                self._add(j, k)

    def _add(self, j, k):
        self.by_key[k] = self.by_key.get(k, 0.0) + self.edge_coef[j]
        self.pos[j] = len(self.items)
        self.items.append(j)

    def _remove(self, j, k):
        self.by_key[k] -= self.edge_coef[j]
        i = self.pos.pop(j)
        last = self.items.pop()
        if last != j:
            self.items[i] = last
            self.pos[last] = i

    def __len__(self):
        return len(self.items)

    def draw(self, rng) -> int:
        return self.items[int(rng.integers(len(self.items)))]

    def internal_gain(self, clusters: frozenset) -> float:
        """Summed coefficient of split edges that merging ``clusters`` makes internal."""
        if 2 ** len(clusters) > len(self.by_key):
            return sum(v for k, v in self.by_key.items() if k <= clusters)
        members = sorted(clusters)
        return sum(self.by_key.get(frozenset(sub), 0.0)
                   for r in range(2, len(members) + 1) for sub in combinations(members, r))

    def update(self, moved) -> None:
        labels = self.work.labels
        seen = set()
        for v in moved:
            for j in self.work.node_edges[v]:
                if j in seen:
                    continue
                seen.add(j)
                old = self.key[j]
                new = frozenset(labels[u] for u in self.work.edges[j])
                if new == old:
                    continue
                if len(old) > 1:
                    self._remove(j, old)
                if len(new) > 1:
                    self._add(j, new)
                self.key[j] = new


def cnm_like(H: Hypergraph, opts: CnmOptions | None = None, **overrides) -> OptimizerResult:
    """Start from singletons; each step draws a uniformly random hyperedge
    that is split into two or more clusters and merges every cluster it
    touches if that strictly increases ``q_strict``.

    Stops after ``max_steps`` draws or when no hyperedge is split.
    """
    opts = resolve_options(CnmOptions, opts, overrides)
    with Timer() as timer:
        work = WorkingClustering.singletons(H)
        if not work.edges:
            raise ValueError("cnm_like needs at least one hyperedge of size >= 2")
        objective = AllOrNothingObjective.strict(work)
        split = SplitEdges(work, objective.edge_coef)
        max_steps = 2 * sum(work.weights) if opts.max_steps is None else opts.max_steps
        rng = np.random.default_rng(opts.seed)
        current = q_strict(H, work.partition())
        history, events = [current], []
        steps = 0
        while steps < max_steps and len(split):
            steps += 1
            j = split.draw(rng)
            touched = split.key[j]
            delta = (split.internal_gain(touched)
                     - objective.merge_volume_change([work.vol[c] for c in touched]))
            if delta <= opts.tol:
                continue
            target = max(touched, key=lambda c: (len(work.members[c]), -c))
            split.update(work.merge(touched, target))
            current += delta
            history.append(current)
            events.append({"step": steps, "kind": "merge", "edge": j, "objective": current})
        final = work.partition()
    return OptimizerResult(
        partition=final, objective=q_strict(H, final), criterion="strict",
        iterations=steps, wall_time=timer.elapsed, seed=opts.seed,
        converged=not len(split), history=history, events=events)
