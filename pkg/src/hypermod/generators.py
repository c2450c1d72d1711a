"""Synthetic modular hypergraphs with planted ground-truth clusters.

Three models are provided:

* ``gen_hsbm``: simple hypergraph stochastic block model.  Every distinct
  s-subset is included independently with probability ``alpha[s]`` when it
  lies inside one cluster and ``beta[s]`` otherwise.
* ``gen_dchsbm``: fixed per-size budgets of hyperedges, each placed inside a
  random cluster with probability ``p[s]`` and anywhere otherwise.
* ``gen_habcd``: a simplified h-ABCD-style model driven by a degree
  sequence, size fractions ``q``, a homogeneity setting and a mixing
  parameter ``xi``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .hypercore import Hypergraph, Partition

# Largest number of candidate s-subsets gen_hsbm will consider (n = 600, S = 3).
HSBM_MAX_SUBSETS = math.comb(600, 3)


class GeneratorResourceError(RuntimeError):
    """Raised when a requested instance is too large to generate."""


class GeneratorError(ValueError):
    """Raised on infeasible generator parameters."""


def _int_keys(d) -> dict[int, float]:
    return {int(s): float(v) for s, v in d.items()}


def largest_remainder(total: int, fractions) -> list[int]:
    """Round ``total * fractions`` to integers that sum to ``total``."""
    fractions = np.asarray(fractions, dtype=np.float64)
    raw = total * fractions / fractions.sum()
    counts = np.floor(raw).astype(int)
    short = total - counts.sum()
    order = np.argsort(-(raw - counts), kind="stable")
    counts[order[:short]] += 1
    return counts.tolist()


def balanced_labels(n: int, K: int) -> np.ndarray:
    """Contiguous blocks of sizes differing by at most one, larger first."""
    sizes = largest_remainder(n, np.ones(K))
    return np.repeat(np.arange(1, K + 1), sizes)


def _unrank_combination(rank: int, n: int, s: int) -> tuple[int, ...]:
    """The ``rank``-th s-subset of range(n) in colexicographic order."""
    out = []
    for k in range(s, 0, -1):
        lo, hi = k - 1, n - 1
        # largest c with comb(c, k) <= rank
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if math.comb(mid, k) <= rank:
                lo = mid
            else:
                hi = mid - 1
        out.append(lo)
        rank -= math.comb(lo, k)
        n = lo
    return tuple(sorted(out))


def _sample_subsets(rng, pool: np.ndarray, s: int, count: int) -> list[tuple[int, ...]]:
    """``count`` distinct uniformly random s-subsets of ``pool``."""
    total = math.comb(len(pool), s)
    if count > total:
        raise GeneratorError("more subsets requested than exist")
    if total <= np.iinfo(np.int64).max:
        ranks = rng.choice(total, size=count, replace=False)
    else:
        seen: set[int] = set()
        while len(seen) < count:
            seen.add(int(rng.integers(total)))
        ranks = sorted(seen)
    return [tuple(int(pool[i]) for i in _unrank_combination(int(r), len(pool), s))
            for r in ranks]


# ---------------------------------------------------------------- HSBM

@dataclass
class HsbmParams:
    n: int
    K: int
    alpha: dict[int, float]
    beta: dict[int, float]
    pi: list[float] | None = None  # uniform when omitted
    labels: list[int] | None = None  # fixed clusters instead of sampling from pi

    def __post_init__(self):
        self.alpha = _int_keys(self.alpha)
        self.beta = _int_keys(self.beta)
        if self.pi is None:
            self.pi = [1.0 / self.K] * self.K
        pi = np.asarray(self.pi, dtype=np.float64)
        if len(pi) != self.K or np.any(pi < 0) or not np.isclose(pi.sum(), 1.0):
            raise ValueError("pi must hold K non-negative probabilities summing to 1")
        if set(self.alpha) != set(self.beta) or not self.alpha or min(self.alpha) < 2:
            raise ValueError("alpha and beta need the same sizes, all >= 2")
        for d in (self.alpha, self.beta):
            if any(not 0.0 <= v <= 1.0 for v in d.values()):
                raise ValueError("alpha and beta are probabilities")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels must have length n")

    @property
    def sizes(self) -> list[int]:
        return sorted(self.alpha)


def hsbm_diagnostics(params: HsbmParams) -> tuple[dict[int, float], dict[int, float]]:
    """Within/cross ratio rho_s and expected |E_s| for every size."""
    pi = np.asarray(params.pi, dtype=np.float64)
    rho, expected = {}, {}
    for s in params.sizes:
        a = float(np.sum(pi ** s))
        al, be = params.alpha[s], params.beta[s]
        within, cross = al * a, be * (1.0 - a)
        rho[s] = math.inf if cross == 0 else within / cross
        expected[s] = math.comb(params.n, s) * (within + cross)
    return rho, expected


def solve_hsbm(n: int, K: int, rho: dict[int, float], expected_edges: dict[int, float],
               pi=None) -> HsbmParams:
    """HSBM parameters with the given within/cross ratios and expected size counts."""
    pi = [1.0 / K] * K if pi is None else list(pi)
    alpha, beta = {}, {}
    for s, target in expected_edges.items():
        a = float(np.sum(np.asarray(pi) ** int(s)))
        r = rho[s]
        b = target / (math.comb(n, int(s)) * (1.0 - a) * (1.0 + r))
        alpha[int(s)], beta[int(s)] = r * b * (1.0 - a) / a, b
    return HsbmParams(n=n, K=K, alpha=alpha, beta=beta, pi=pi)


def gen_hsbm(params: HsbmParams, seed: int = 0) -> tuple[Hypergraph, Partition]:
    """Draw a simple hypergraph from the HSBM.

    Independent inclusion of every s-subset is realised exactly by drawing
    the binomial number of included subsets in each class (within one
    cluster, or spanning several) and then that many distinct subsets
    uniformly from the class.
    """
    n = params.n
    for s in params.sizes:
        if math.comb(n, s) > HSBM_MAX_SUBSETS:
            raise GeneratorResourceError(
                f"C({n},{s}) candidate hyperedges exceeds the limit of {HSBM_MAX_SUBSETS}")
    rng = np.random.default_rng(seed)
    if params.labels is not None:
        labels = np.asarray(params.labels, dtype=np.int64)
    else:
        labels = rng.choice(params.K, size=n, p=np.asarray(params.pi)) + 1
    members = [np.flatnonzero(labels == k) + 1 for k in range(1, params.K + 1)]
    edges: list[tuple[int, ...]] = []
    for s in params.sizes:
        n_within = sum(math.comb(len(m), s) for m in members)
        n_cross = math.comb(n, s) - n_within
        for m in members:
            c = rng.binomial(math.comb(len(m), s), params.alpha[s]) if len(m) >= s else 0
            if c:
                edges.extend(_sample_subsets(rng, m, s, int(c)))
        c = int(rng.binomial(n_cross, params.beta[s])) if n_cross else 0
        chosen: set[tuple[int, ...]] = set()
        while len(chosen) < c:
            e = tuple(sorted((rng.choice(n, size=s, replace=False) + 1).tolist()))
            if len({labels[v - 1] for v in e}) > 1:
                chosen.add(e)
        edges.extend(sorted(chosen))
    return Hypergraph(n, edges), Partition(labels)


# ---------------------------------------------------------------- DCHSBM-like

@dataclass
class DchsbmParams:
    n: int
    K: int
    p: dict[int, float]
    total_edges: int | None = None  # split equally over sizes
    edges_per_size: dict[int, int] | None = None  # overrides total_edges
    binary: bool = False  # drop duplicates instead of merging them by weight

    def __post_init__(self):
        self.p = _int_keys(self.p)
        if not self.p or min(self.p) < 2:
            raise ValueError("p needs sizes >= 2")
        if any(not 0.0 <= v <= 1.0 for v in self.p.values()):
            raise ValueError("p values are probabilities")
        if self.edges_per_size is not None:
            self.edges_per_size = {int(s): int(c) for s, c in self.edges_per_size.items()}
            if set(self.edges_per_size) != set(self.p):
                raise ValueError("edges_per_size and p need the same sizes")
        elif self.total_edges is None:
            raise ValueError("give total_edges or edges_per_size")

    @property
    def sizes(self) -> list[int]:
        return sorted(self.p)

    def budgets(self) -> dict[int, int]:
        if self.edges_per_size is not None:
            return dict(self.edges_per_size)
        counts = largest_remainder(self.total_edges, np.ones(len(self.sizes)))
        return dict(zip(self.sizes, counts))


def within_fraction(n: int, K: int, s: int) -> float:
    """c_s: share of all s-subsets lying inside one of K equal blocks of size n // K."""
    return K * math.comb(n // K, s) / math.comb(n, s)


def dchsbm_expected_rho(params: DchsbmParams, s: int) -> float:
    p = params.p[s]
    c = within_fraction(params.n, params.K, s)
    if p == 1.0:
        return math.inf
    return (p + (1.0 - p) * c) / ((1.0 - p) * (1.0 - c))


def dchsbm_p_for_rho(rho: float, c: float) -> float:
    """Placement probability giving expected within/cross ratio ``rho``."""
    p = (rho * (1.0 - c) - c) / ((1.0 - c) * (1.0 + rho))
    if not 0.0 <= p < 1.0:
        raise GeneratorError(f"ratio {rho} is below the chance level {c / (1 - c):.4g}")
    return p


@dataclass
class DchsbmInfo:
    duplicates: int
    within: dict[int, float] = field(default_factory=dict)
    cross: dict[int, float] = field(default_factory=dict)


def gen_dchsbm(params: DchsbmParams, seed: int = 0, return_info: bool = False):
    """Draw a DCHSBM-like hypergraph on balanced contiguous clusters.

    Duplicate draws are merged into one edge whose weight is the number of
    draws (or dropped when ``params.binary``); the count of duplicates is
    reported in the optional info record.
    """
    n, K = params.n, params.K
    labels = balanced_labels(n, K)
    members = [np.flatnonzero(labels == k) + 1 for k in range(1, K + 1)]
    rng = np.random.default_rng(seed)
    draws: list[tuple[int, ...]] = []
    info = DchsbmInfo(duplicates=0)
    for s, count in params.budgets().items():
        inside = rng.random(count) < params.p[s]
        if inside.any() and s > min(len(m) for m in members):
            raise GeneratorError(f"size {s} does not fit inside every cluster")
        for placed_inside in inside:
            pool = members[rng.integers(K)] if placed_inside else np.arange(1, n + 1)
            draws.append(tuple(sorted(rng.choice(pool, size=s, replace=False).tolist())))
    counted = Counter(draws)
    info.duplicates = len(draws) - len(counted)
    edges = list(counted)
    weights = None if params.binary else [counted[e] for e in edges]
    H = Hypergraph(n, edges, weights)
    P = Partition(labels)
    info.within, info.cross = empirical_rho(H, P)
    return (H, P, info) if return_info else (H, P)


# ---------------------------------------------------------------- h-ABCD-like

def homogeneity_table(setting: str, s: int) -> dict[int, float]:
    """Share of homogeneous size-s hyperedges with c nodes in the majority cluster.

    The support is c > s/2 in every setting, which makes each table sum to 1.
    """
    cs = [c for c in range(s // 2 + 1, s + 1)]
    if setting == "strict":
        return {c: float(c == s) for c in cs}
    if setting == "majority":
        return {c: 1.0 / math.ceil(s / 2) for c in cs}
    if setting == "linear":
        denom = (s + s // 2 + 1) * math.ceil(s / 2)
        return {c: 2.0 * c / denom for c in cs}
    raise ValueError(f"unknown homogeneity setting {setting!r}")


def power_law_degrees(rng, n: int, gamma: float, d_min: int, d_max: int) -> np.ndarray:
    """i.i.d. degrees from P(d) proportional to d^-gamma on [d_min, d_max]."""
    support = np.arange(d_min, d_max + 1)
    prob = support.astype(np.float64) ** -gamma
    return rng.choice(support, size=n, p=prob / prob.sum())


@dataclass
class HabcdParams:
    n: int
    cluster_sizes: list[int]
    q: dict[int, float]
    xi: float
    setting: str = "strict"
    degrees: list[int] | None = None
    gamma: float | None = None
    d_min: int = 1
    d_max: int | None = None

    def __post_init__(self):
        self.q = _int_keys(self.q)
        if not math.isclose(sum(self.q.values()), 1.0, abs_tol=1e-9):
            raise ValueError("size fractions q must sum to 1")
        if self.q.get(1, 0.0) != 0.0 or min(self.q) < 1:
            raise ValueError("q_1 must be 0")
        self.q = {s: v for s, v in self.q.items() if v > 0}
        if not 0.0 < self.xi < 1.0:
            raise ValueError("xi must lie in (0, 1)")
        if sum(self.cluster_sizes) != self.n or min(self.cluster_sizes) < 1:
            raise ValueError("cluster sizes must be positive and sum to n")
        homogeneity_table(self.setting, 2)
        if self.degrees is not None:
            if len(self.degrees) != self.n or min(self.degrees) < 0:
                raise ValueError("degrees must be n non-negative integers")
        elif self.gamma is None or self.d_max is None:
            raise ValueError("give degrees or gamma with d_max")
        elif not 1 <= self.d_min <= self.d_max:
            raise ValueError("need 1 <= d_min <= d_max")

    @property
    def mean_size(self) -> float:
        return sum(s * v for s, v in self.q.items())


def habcd_edge_count(total_degree: float, q: dict[int, float]) -> int:
    return int(round(total_degree / sum(s * v for s, v in q.items())))


def gen_habcd(params: HabcdParams, seed: int = 0, max_tries: int = 1000):
    """Draw a hypergraph from the simplified h-ABCD-style model.

    Node selection is proportional to the target degrees.  Each hyperedge is
    homogeneous with probability 1 - xi: its majority cluster is drawn in
    proportion to cluster degree, its majority count c from the homogeneity
    table, and the remaining s - c nodes come from other clusters.  A
    non-homogeneous hyperedge is drawn from all nodes and redrawn while it
    would count as homogeneous.
    """
    rng = np.random.default_rng(seed)
    n = params.n
    if params.degrees is not None:
        deg = np.asarray(params.degrees, dtype=np.float64)
    else:
        deg = power_law_degrees(rng, n, params.gamma, params.d_min, params.d_max).astype(np.float64)
    if deg.sum() <= 0:
        raise GeneratorError("degree sequence sums to zero")
    labels = np.repeat(np.arange(1, len(params.cluster_sizes) + 1), params.cluster_sizes)
    members = [np.flatnonzero(labels == k) for k in range(1, len(params.cluster_sizes) + 1)]
    cluster_deg = np.array([deg[m].sum() for m in members])
    sizes = sorted(params.q)
    counts = largest_remainder(habcd_edge_count(deg.sum(), params.q),
                               [params.q[s] for s in sizes])

    def pick(pool, k):
        w = deg[pool]
        if np.count_nonzero(w) < k:
            raise GeneratorError("not enough nodes with positive degree")
        return rng.choice(pool, size=k, replace=False, p=w / w.sum())

    everyone = np.arange(n)
    edges = []
    for s, count in zip(sizes, counts):
        table = homogeneity_table(params.setting, s)
        cs, ws = list(table), np.array(list(table.values()))
        floor = s if params.setting == "strict" else s // 2 + 1
        for _ in range(count):
            if rng.random() >= params.xi:
                k = rng.choice(len(members), p=cluster_deg / cluster_deg.sum())
                c = cs[rng.choice(len(cs), p=ws / ws.sum())]
                if len(members[k]) < c:
                    raise GeneratorError(f"cluster {k + 1} is smaller than {c}")
                nodes = list(pick(members[k], c))
                if c < s:
                    nodes += list(pick(np.flatnonzero(labels != k + 1), s - c))
            else:
                for _ in range(max_tries):
                    nodes = pick(everyone, s)
                    top = Counter(labels[nodes].tolist()).most_common(1)[0][1]
                    if top < floor:
                        break
                else:
                    raise GeneratorError(f"cannot draw a non-homogeneous edge of size {s}")
            edges.append(tuple(sorted(int(v) + 1 for v in nodes)))
    return Hypergraph(n, edges), Partition(labels)


# ---------------------------------------------------------------- parameter links

def dchsbm_p_from_hsbm(alpha: float, K: int, s: int, n_edges: float) -> float:
    """Within-placement probability matching an HSBM within-cluster rate
    (multiset model, equal proportions)."""
    return alpha * K ** (s + 1) / n_edges


def hsbm_alpha_from_dchsbm(p: float, beta: float, K: int, s: int) -> float:
    """Within-cluster HSBM rate matching a placement probability
    (simple model, equal proportions)."""
    if p >= 1.0:
        raise GeneratorError("p = 1 has no finite HSBM counterpart")
    return p * beta * (K ** (s - 1) - 1) / (1.0 - p)


def convert_params(direction: str, **inputs) -> float:
    """``direction`` is ``"hsbm->dchsbm"`` (alpha, K, s, n_edges) or
    ``"dchsbm->hsbm"`` (p, beta, K, s)."""
    if direction == "hsbm->dchsbm":
        return dchsbm_p_from_hsbm(**inputs)
    if direction == "dchsbm->hsbm":
        return hsbm_alpha_from_dchsbm(**inputs)
    raise ValueError(f"unknown direction {direction!r}")


def empirical_rho(H: Hypergraph, truth: Partition) -> tuple[dict[int, float], dict[int, float]]:
    """Weighted within-cluster and cross-cluster hyperedge counts per size."""
    within: dict[int, float] = {}
    cross: dict[int, float] = {}
    for e, w in zip(H.edges, H.weights.tolist()):
        d = within if len({truth.labels[v - 1] for v in e}) == 1 else cross
        d[len(e)] = d.get(len(e), 0) + w
    return within, cross
