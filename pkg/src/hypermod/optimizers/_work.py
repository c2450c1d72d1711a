"""Mutable clustering state and incremental objective deltas for local search.

Nodes are 0-based here and cluster ids are slots in ``range(n)``; a
singleton start puts node i in slot i.  Full recomputation through
:mod:`hypermod.modularity` is the reference these deltas are tested against.
"""
from __future__ import annotations

import math

from ..hypercore import Hypergraph, Partition
from ..modularity import WscSetting, wsc_weight


class WorkingClustering:
    """Stripped hypergraph in 0-based form plus cluster bookkeeping."""

    def __init__(self, H: Hypergraph, codes):
        H = H.without_singletons()
        self.H = H
        self.n = H.n
        self.edges = [tuple(v - 1 for v in e) for e in H.edges]
        self.weights = H.weights.tolist()
        self.sizes = [len(e) for e in self.edges]
        self.deg = H.degrees.tolist()
        self.node_edges = H.node_edges
        neighbors = [set() for _ in range(self.n)]
        for e in self.edges:
            for u in e:
                neighbors[u].update(e)
        for u, nb in enumerate(neighbors):
            nb.discard(u)
        self.neighbors = [sorted(nb) for nb in neighbors]
        self.size_counts = H.size_counts()
        self.total_volume = sum(self.deg)

        self.labels = [int(c) for c in codes]
        slots = max(self.n, max(self.labels, default=-1) + 1)
        self.vol = [0] * slots
        self.members: list[set[int]] = [set() for _ in range(slots)]
        for v, c in enumerate(self.labels):
            self.vol[c] += self.deg[v]
            self.members[c].add(v)

    @classmethod
    def singletons(cls, H: Hypergraph) -> "WorkingClustering":
        return cls(H, range(H.n))

    def partition(self) -> Partition:
        return Partition([c + 1 for c in self.labels])

    def clusters(self) -> list[int]:
        return [c for c, mem in enumerate(self.members) if mem]

    def adjacent_clusters(self, v: int) -> set[int]:
        labels = self.labels
        out = {labels[u] for u in self.neighbors[v]}
        out.discard(labels[v])
        return out

    def adjacent_to_cluster(self, c: int) -> set[int]:
        labels = self.labels
        out = set()
        for v in self.members[c]:
            for u in self.neighbors[v]:
                out.add(labels[u])
        out.discard(c)
        return out

    def move(self, v: int, target: int) -> None:
        source = self.labels[v]
        if source == target:
            return
        self.labels[v] = target
        self.vol[source] -= self.deg[v]
        self.vol[target] += self.deg[v]
        self.members[source].discard(v)
        self.members[target].add(v)

    def merge(self, clusters, target: int) -> list[int]:
        """Relabel every cluster in ``clusters`` to ``target``; return moved nodes."""
        moved = []
        for c in clusters:
            if c == target:
                continue
            for v in self.members[c]:
                self.labels[v] = target
                moved.append(v)
            self.members[target] |= self.members[c]
            self.members[c] = set()
            self.vol[target] += self.vol[c]
            self.vol[c] = 0
        return moved

    def is_split(self, j: int) -> bool:
        labels = self.labels
        e = self.edges[j]
        first = labels[e[0]]
        return any(labels[u] != first for u in e[1:])


class AllOrNothingObjective:
    """sum_s inside_coef[s] * (within-cluster size-s weight)
    - sum_s volume_coef[s] * sum_k Vol(C_k)**s.

    Strict modularity and the AON criterion are both of this form.
    """

    def __init__(self, work: WorkingClustering, inside_coef: dict, volume_coef: dict):
        self.work = work
        self.inside_coef = inside_coef
        self.volume_coef = volume_coef
        self.edge_coef = [w * inside_coef[s] for w, s in zip(work.weights, work.sizes)]
        self._volume_terms = [(s, c) for s, c in volume_coef.items() if c]

    @classmethod
    def strict(cls, work: WorkingClustering) -> "AllOrNothingObjective":
        m = sum(work.size_counts.values())
        vol = work.total_volume
        return cls(work, {s: 1.0 / m for s in work.size_counts},
                   {s: ms / (m * vol ** s) for s, ms in work.size_counts.items()})

    @classmethod
    def aon(cls, work: WorkingClustering, params) -> "AllOrNothingObjective":
        return cls(work, {s: params.beta[s] for s in work.size_counts},
                   {s: params.beta[s] * params.gamma[s] for s in work.size_counts})

    def _grow(self, x: int, d: int) -> float:
        """Volume term change when a cluster of volume x grows by d (d may be negative)."""
        # integer power differences keep the cancellation exact
        out = 0.0
        y = x + d
        for s, coef in self._volume_terms:
            out += coef * (y ** s - x ** s)
        return out

    def move_deltas(self, v: int) -> dict[int, float]:
        """Objective change for moving ``v`` to each adjacent cluster."""
        w = self.work
        labels = w.labels
        own = labels[v]
        candidates = w.adjacent_clusters(v)
        if not candidates:
            return {}
        lose = 0.0
        gain: dict[int, float] = {}
        for j in w.node_edges[v]:
            other = -1
            uniform = True
            for u in w.edges[j]:
                if u == v:
                    continue
                lu = labels[u]
                if other < 0:
                    other = lu
                elif lu != other:
                    uniform = False
                    break
            if other < 0 or not uniform:
                continue
            if other == own:
                lose += self.edge_coef[j]
            else:
                gain[other] = gain.get(other, 0.0) + self.edge_coef[j]
        d = w.deg[v]
        base = -lose - self._grow(w.vol[own], -d)
        return {c: base + gain.get(c, 0.0) - self._grow(w.vol[c], d) for c in candidates}

    def merge_delta(self, clusters) -> float:
        """Objective change for merging all ``clusters`` into one."""
        w = self.work
        clusters = set(clusters)
        if len(clusters) < 2:
            return 0.0
        labels = w.labels
        largest = max(clusters, key=lambda c: (len(w.members[c]), -c))
        gain = 0.0
        seen = set()
        # a newly internal edge touches at least two merged clusters,
        # so it is incident to one that is not the largest
        for c in clusters:
            if c == largest:
                continue
            for v in w.members[c]:
                for j in w.node_edges[v]:
                    if j in seen:
                        continue
                    seen.add(j)
                    labs = {labels[u] for u in w.edges[j]}
                    if len(labs) > 1 and labs <= clusters:
                        gain += self.edge_coef[j]
        return gain - self.merge_volume_change([w.vol[c] for c in clusters])

    def pair_merge_deltas(self, c: int) -> dict[int, float]:
        """Objective change for merging cluster ``c`` into each adjacent cluster."""
        w = self.work
        labels = w.labels
        gain: dict[int, float] = {}
        seen = set()
        for v in w.members[c]:
            for j in w.node_edges[v]:
                if j in seen:
                    continue
                seen.add(j)
                other = -1
                for u in w.edges[j]:
                    lu = labels[u]
                    if lu == c or lu == other:
                        continue
                    if other >= 0:
                        other = -2
                        break
                    other = lu
                if other >= 0:
                    gain[other] = gain.get(other, 0.0) + self.edge_coef[j]
        vc = w.vol[c]
        return {b: gain.get(b, 0.0) - self.merge_volume_change((vc, w.vol[b]))
                for b in w.adjacent_to_cluster(c)}

    def merge_volume_change(self, vols) -> float:
        """Volume term change when clusters with volumes ``vols`` become one."""
        total = sum(vols)
        return sum(coef * (total ** s - sum(x ** s for x in vols))
                   for s, coef in self._volume_terms)


class WscObjective:
    """Homogeneity-weighted modularity with per-edge majority contributions."""

    def __init__(self, work: WorkingClustering, setting: WscSetting):
        self.work = work
        self.setting = setting
        m = sum(work.size_counts.values())
        self.m = m
        self.weight_table = {
            (s, c): wsc_weight(setting, s, c)
            for s in work.size_counts for c in range(s // 2 + 1, s + 1)
        }
        self.tax_coef = {s: ms / m for s, ms in work.size_counts.items()}

    def edge_value(self, j: int, labels, v: int = -1, target: int = -1) -> float:
        w = self.work
        counts: dict[int, int] = {}
        for u in w.edges[j]:
            c = target if u == v else labels[u]
            counts[c] = counts.get(c, 0) + 1
        top = max(counts.values())
        s = w.sizes[j]
        if 2 * top <= s:
            return 0.0
        return w.weights[j] * self.weight_table[(s, top)] / self.m

    def cluster_tax(self, volume: int) -> float:
        x = volume / self.work.total_volume
        out = 0.0
        for s, coef in self.tax_coef.items():
            for c in range(s // 2 + 1, s + 1):
                wsc = self.weight_table[(s, c)]
                if wsc:
                    out += coef * wsc * binom_pmf(s, c, x)
        return out

    def move_deltas(self, v: int) -> dict[int, float]:
        w = self.work
        labels = w.labels
        own = labels[v]
        candidates = w.adjacent_clusters(v)
        if not candidates:
            return {}
        incident = w.node_edges[v]
        before = sum(self.edge_value(j, labels) for j in incident)
        d = w.deg[v]
        va = w.vol[own]
        tax_own = self.cluster_tax(va - d) - self.cluster_tax(va)
        out = {}
        for c in candidates:
            after = sum(self.edge_value(j, labels, v, c) for j in incident)
            vc = w.vol[c]
            dtax = tax_own + self.cluster_tax(vc + d) - self.cluster_tax(vc)
            out[c] = after - before - dtax
        return out


def binom_pmf(s: int, c: int, x: float) -> float:
    """P(Bin(s, x) = c), evaluated in log space."""
    if x <= 0.0:
        return 1.0 if c == 0 else 0.0
    if x >= 1.0:
        return 1.0 if c == s else 0.0
    log_p = (math.lgamma(s + 1) - math.lgamma(c + 1) - math.lgamma(s - c + 1)
             + c * math.log(x) + (s - c) * math.log1p(-x))
    return math.exp(log_p)


def best_move(deltas: dict[int, float], tol: float):
    """Largest strictly improving delta; ties go to the lowest cluster id."""
    best, best_delta = None, tol
    for c in sorted(deltas):
        if deltas[c] > best_delta:
            best, best_delta = c, deltas[c]
    return best, best_delta
