"""Hypergraph modularity criteria.

All functions strip size-1 hyperedges first (including from degrees and
volumes): self-loops never contribute to any of the criteria.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Union

import numpy as np
from scipy.stats import binom

from .hypercore import Hypergraph, Partition
from .partvec import (
    cluster_volumes,
    injective_power_sum,
    integer_partitions,
    split_counts,
    tuple_multiplicity,
)

AON_EPS = 1e-10
RANGE_SLACK = 1e-9

WscSetting = Union[str, Mapping[tuple[int, int], float]]
Affinity = Callable[[tuple], float]


class UndefinedModularityError(ValueError):
    """The criterion is undefined (no hyperedges or zero total volume)."""


def wsc_weight(setting: WscSetting, s: int, c: int) -> float:
    """Hyperedge homogeneity weight w_{s,c}; zero unless c > s/2."""
    if 2 * c <= s:
        return 0.0
    if setting == "strict":
        return 1.0 if c == s else 0.0
    if setting == "majority":
        return 1.0
    if setting == "linear":
        return c / s
    if isinstance(setting, Mapping):
        w = float(setting.get((s, c), 0.0))
        if not 0.0 <= w <= 1.0:
            raise ValueError(f"w[{s},{c}] = {w} outside [0, 1]")
        return w
    raise ValueError(f"unknown w_sc setting {setting!r}")


def _prepare(H: Hypergraph, partition: Partition):
    if partition.n != H.n:
        raise ValueError(f"partition covers {partition.n} nodes, hypergraph has {H.n}")
    H = H.without_singletons()
    m = H.num_edges
    vol = int(H.degrees.sum())
    if m == 0 or vol == 0:
        raise UndefinedModularityError("hypergraph has no hyperedges of size >= 2")
    return H, m, vol


def _edge_label_counts(H: Hypergraph, codes: np.ndarray):
    """Per edge: (weight, size, {cluster: node count})."""
    for e, w in zip(H.edges, H.weights.tolist()):
        counts: dict[int, int] = {}
        for v in e:
            k = codes[v - 1]
            counts[k] = counts.get(k, 0) + 1
        yield w, len(e), counts


def _check_range(q: float, name: str) -> float:
    if not -1.0 - RANGE_SLACK <= q <= 1.0 + RANGE_SLACK:
        raise AssertionError(f"{name} = {q} outside [-1, 1]")
    return q


def q_wclique(H: Hypergraph, partition: Partition) -> float:
    """Modularity of the degree-preserving weighted clique reduction.

    Internal weight counts ordered node pairs, so the one-cluster partition
    scores exactly 0.
    """
    H, m, vol = _prepare(H, partition)
    codes = partition.codes.tolist()
    inner = 0.0
    for e, w in zip(H.edges, H.weights.tolist()):
        per_cluster: dict[int, int] = {}
        per_node: dict[int, int] = {}
        for v in e:
            per_cluster[codes[v - 1]] = per_cluster.get(codes[v - 1], 0) + 1
            per_node[v] = per_node.get(v, 0) + 1
        same = sum(c * c for c in per_cluster.values()) - sum(c * c for c in per_node.values())
        inner += w * same / (len(e) - 1)
    vols = np.bincount(partition.codes, weights=H.degrees, minlength=partition.K)
    q = (inner - float((vols ** 2).sum()) / vol) / (2 * m)
    return _check_range(q, "q_wclique")


def q_strict(H: Hypergraph, partition: Partition) -> float:
    """Strict modularity: only hyperedges inside a single cluster count,
    against a degree tax sum_s |E_s| (Vol(C)/Vol(V))**s."""
    H, m, vol = _prepare(H, partition)
    codes = partition.codes
    inside = 0
    for e, w in zip(H.edges, H.weights.tolist()):
        k = codes[e[0] - 1]
        if all(codes[v - 1] == k for v in e[1:]):
            inside += w
    frac = np.bincount(codes, weights=H.degrees, minlength=partition.K) / vol
    tax = sum(ms * float((frac ** s).sum()) for s, ms in H.size_counts().items())
    return _check_range((inside - tax) / m, "q_strict")


def q_wsc(H: Hypergraph, partition: Partition, setting: WscSetting = "linear") -> float:
    """Homogeneity-weighted modularity with weights w_{s,c}.

    ``setting`` is ``"strict"``, ``"majority"``, ``"linear"`` or a mapping
    ``(s, c) -> weight``.
    """
    H, m, vol = _prepare(H, partition)
    codes = partition.codes.tolist()
    observed = 0.0
    for w, s, counts in _edge_label_counts(H, codes):
        c = max(counts.values())
        if 2 * c > s:
            observed += w * wsc_weight(setting, s, c)
    frac = np.bincount(partition.codes, weights=H.degrees, minlength=partition.K) / vol
    expected = 0.0
    for s, ms in H.size_counts().items():
        for c in range(s // 2 + 1, s + 1):
            wsc = wsc_weight(setting, s, c)
            if wsc:
                expected += ms * wsc * float(binom.pmf(c, s, frac).sum())
    return _check_range((observed - expected) / m, "q_wsc")


@dataclass
class AonParams:
    """Per-size all-or-nothing weights.

    ``beta[s]`` multiplies the within-cluster count of size-s hyperedges and
    ``beta[s] * gamma[s]`` the volume penalty sum_k Vol(C_k)**s.  ``omega1``
    and ``omega0`` are the affinities they were derived from (absent when the
    params were given directly).
    """

    beta: dict[int, float]
    gamma: dict[int, float]
    omega1: dict[int, float] = field(default_factory=dict)
    omega0: dict[int, float] = field(default_factory=dict)

    @classmethod
    def from_omegas(cls, omega1: Mapping[int, float], omega0: Mapping[int, float],
                    eps: float = AON_EPS) -> "AonParams":
        beta, gamma, w1s, w0s = {}, {}, {}, {}
        for s in sorted(omega1):
            w1 = max(float(omega1[s]), eps)
            w0 = max(float(omega0[s]), eps)
            b = math.log(w1) - math.log(w0)
            beta[s] = b
            gamma[s] = (w1 - w0) / b if b != 0.0 else w1
            w1s[s], w0s[s] = w1, w0
        return cls(beta, gamma, w1s, w0s)

    @classmethod
    def strict_equivalent(cls, H: Hypergraph) -> "AonParams":
        """beta_s = 1, gamma_s = |E_s| / Vol(V)**s, i.e. |E| * q_strict."""
        H = H.without_singletons()
        vol = int(H.degrees.sum())
        counts = H.size_counts()
        return cls({s: 1.0 for s in counts}, {s: ms / vol ** s for s, ms in counts.items()})

    def sizes(self) -> list[int]:
        return sorted(self.beta)


def estimate_aon_params(H: Hypergraph, init: Partition, eps: float = AON_EPS) -> AonParams:
    """Estimate the all-or-nothing affinities from an initial partition.

    omega1_s = (within-cluster size-s edges) / sum_k Vol(C_k)**s and
    omega0_s = cut_s / sum_{p: J>=2, |p|=s} mult(p) Vol(C_p), which equals
    Vol(V)**s - sum_k Vol(C_k)**s.  Both are clamped below by ``eps``.
    """
    H, m, vol = _prepare(H, init)
    vols = cluster_volumes(H, init)
    codes = init.codes
    within: dict[int, int] = {}
    for e, w in zip(H.edges, H.weights.tolist()):
        k = codes[e[0] - 1]
        if all(codes[v - 1] == k for v in e[1:]):
            within[len(e)] = within.get(len(e), 0) + w
    omega1, omega0 = {}, {}
    for s, ms in H.size_counts().items():
        same = sum(v ** s for v in vols)
        inside = within.get(s, 0)
        omega1[s] = inside / same
        split_vol = vol ** s - same
        omega0[s] = (ms - inside) / split_vol if split_vol > 0 else 0.0
    return AonParams.from_omegas(omega1, omega0, eps)


def q_aon(H: Hypergraph, partition: Partition, params: AonParams) -> float:
    """All-or-nothing modularity, partition-independent constant dropped."""
    H, m, vol = _prepare(H, partition)
    missing = set(H.size_counts()) - set(params.beta)
    if missing:
        raise ValueError(f"AON params missing sizes {sorted(missing)}")
    codes = partition.codes
    inside: dict[int, int] = {}
    for e, w in zip(H.edges, H.weights.tolist()):
        k = codes[e[0] - 1]
        if all(codes[v - 1] == k for v in e[1:]):
            inside[len(e)] = inside.get(len(e), 0) + w
    vols = np.bincount(codes, weights=H.degrees, minlength=partition.K)
    q = 0.0
    for s in H.size_counts():
        b = params.beta[s]
        q += b * (inside.get(s, 0) - params.gamma[s] * float((vols ** s).sum()))
    return q


def aon_constant(H: Hypergraph, params: AonParams) -> float:
    """The partition-independent term separating q_symmetric under the AON
    affinity from q_aon: sum_s (|E_s| log omega0_s - omega0_s Vol(V)**s)."""
    H = H.without_singletons()
    vol = float(H.degrees.sum())
    return sum(ms * math.log(params.omega0[s]) - params.omega0[s] * vol ** s
               for s, ms in H.size_counts().items())


def aon_affinity(params: AonParams) -> Affinity:
    """Affinity that is omega1_s on (s) and omega0_s on every other size-s vector."""
    if not params.omega1:
        raise ValueError("AON params carry no omega values")

    def affinity(p):
        s = sum(p)
        if s not in params.omega1:
            raise ValueError(f"AON params have no size-{s} entry")
        return params.omega1[s] if len(p) == 1 else params.omega0[s]

    return affinity


def q_symmetric(H: Hypergraph, partition: Partition, affinity: Affinity) -> float:
    """Symmetric modularity for a user-supplied affinity over partition vectors.

    sum_p [ e_H(C_p) log affinity(p) - mult(p) Vol_H(C_p) affinity(p) ] over
    every partition vector of size 2..S with at most K parts.  ``mult(p)``
    counts the s-tuples behind each ordered label assignment
    (see :func:`hypermod.partvec.tuple_multiplicity`).
    """
    H, m, vol = _prepare(H, partition)
    counts = split_counts(H, partition)
    vols = cluster_volumes(H, partition)
    S = H.max_size
    psums = [sum(v ** j for v in vols) for j in range(S + 1)]
    total = 0.0
    for s in range(2, S + 1):
        for p in integer_partitions(s, max_parts=partition.K):
            omega = float(affinity(p))
            if not omega > 0.0:
                raise ValueError(f"affinity({p}) = {omega} is not positive")
            volume = tuple_multiplicity(p) * injective_power_sum(vols, p, psums)
            total += counts.get(p, 0) * math.log(omega) - float(volume) * omega
    return total
