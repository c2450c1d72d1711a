"""Hypergraph data model, incidence statistics, clique reductions and file I/O.

Node ids are the integers ``1..n`` at the API boundary (files, ``degree``,
``volume``, partitions).  Internally every array is indexed by ``v - 1``.
"""
from __future__ import annotations

import io
import logging
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

logger = logging.getLogger(__name__)


class HypergraphFormatError(ValueError):
    """Raised when a hypergraph or partition file cannot be parsed."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class Hypergraph:
    """Weighted (possibly multiset) hypergraph on nodes ``1..n``.

    ``edges`` is a sequence of node-id sequences; ``weights`` defaults to all
    ones.  Edges are canonicalised (sorted node lists) and identical edges are
    merged by summing their weights, keeping first-appearance order.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (),
                 weights: Iterable[int] | None = None):
        n = int(n)
        if n < 0:
            raise ValueError("node count must be non-negative")
        edges = [tuple(sorted(int(v) for v in e)) for e in edges]
        if weights is None:
            weights = [1] * len(edges)
        else:
            weights = [int(w) for w in weights]
            if len(weights) != len(edges):
                raise ValueError("weights and edges differ in length")

        merged: dict[tuple[int, ...], int] = {}
        for e, w in zip(edges, weights):
            if len(e) == 0:
                raise ValueError("empty hyperedge")
            if e[0] < 1 or e[-1] > n:
                raise ValueError(f"hyperedge {e} has node ids outside [1, {n}]")
            if w < 1:
                raise ValueError(f"hyperedge {e} has weight {w} < 1")
            merged[e] = merged.get(e, 0) + w

        self.n = n
        self.edges: tuple[tuple[int, ...], ...] = tuple(merged)
        self.weights = np.fromiter(merged.values(), dtype=np.int64, count=len(merged))
        self.weights.flags.writeable = False

    def __repr__(self):
        return f"Hypergraph(n={self.n}, edges={len(self.edges)}, max_size={self.max_size})"

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n == other.n
                and dict(zip(self.edges, self.weights.tolist()))
                == dict(zip(other.edges, other.weights.tolist())))

    def __hash__(self):
        return hash((self.n, frozenset(zip(self.edges, self.weights.tolist()))))

    @property
    def num_edges(self) -> int:
        """Weighted edge count |E|."""
        return int(self.weights.sum())

    @cached_property
    def sizes(self) -> np.ndarray:
        """|e| for every stored edge, counting node multiplicity."""
        s = np.fromiter((len(e) for e in self.edges), dtype=np.int64, count=len(self.edges))
        s.flags.writeable = False
        return s

    @property
    def max_size(self) -> int:
        return int(self.sizes.max()) if len(self.edges) else 0

    def size_counts(self) -> dict[int, int]:
        """Map s -> weighted |E_s| (only sizes that occur)."""
        out: dict[int, int] = {}
        for s, w in zip(self.sizes.tolist(), self.weights.tolist()):
            out[s] = out.get(s, 0) + w
        return dict(sorted(out.items()))

    @cached_property
    def incidence(self) -> sp.csr_matrix:
        """n x |E| incidence matrix with entries m_e(v)."""
        rows, cols = [], []
        for j, e in enumerate(self.edges):
            rows.extend(v - 1 for v in e)
            cols.extend([j] * len(e))
        data = np.ones(len(rows), dtype=np.float64)
        # duplicates are summed, which gives node multiplicities
        return sp.csr_matrix((data, (rows, cols)), shape=(self.n, len(self.edges)))

    @cached_property
    def degrees(self) -> np.ndarray:
        """deg_H(v) for v = 1..n, stored at index v-1."""
        deg = np.zeros(self.n, dtype=np.int64)
        for e, w in zip(self.edges, self.weights.tolist()):
            for v in e:
                deg[v - 1] += w
        deg.flags.writeable = False
        return deg

    @cached_property
    def node_edges(self) -> tuple[tuple[int, ...], ...]:
        """Indices of the edges incident to each node (0-based node index)."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for j, e in enumerate(self.edges):
            for v in set(e):
                inc[v - 1].append(j)
        return tuple(tuple(x) for x in inc)

    def without_singletons(self) -> "Hypergraph":
        """Copy with all size-1 hyperedges removed."""
        if len(self.edges) == 0 or self.sizes.min() >= 2:
            return self
        keep = [j for j, s in enumerate(self.sizes.tolist()) if s >= 2]
        return Hypergraph(self.n, [self.edges[j] for j in keep],
                          self.weights[keep].tolist())


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected weighted graph on nodes ``1..n`` with zero diagonal."""

    n: int
    adjacency: sp.csr_matrix

    def weight(self, u: int, v: int) -> float:
        return float(self.adjacency[u - 1, v - 1])

    def to_dense(self) -> np.ndarray:
        return self.adjacency.toarray()


class Partition:
    """A clustering of nodes ``1..n``.

    Labels are relabelled to ``1..K`` in order of first appearance, so two
    partitions that differ only by cluster names compare equal.
    """

    def __init__(self, labels: Iterable[int]):
        raw = np.asarray(list(labels) if not isinstance(labels, np.ndarray) else labels)
        if raw.ndim != 1:
            raise ValueError("labels must be one-dimensional")
        _, first, inverse = np.unique(raw, return_index=True, return_inverse=True)
        order = np.argsort(first)
        rank = np.empty_like(order)
        rank[order] = np.arange(len(order))
        self.labels = (rank[inverse] + 1).astype(np.int64)
        self.labels.flags.writeable = False
        self.K = int(len(order))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(np.arange(1, n + 1))

    @classmethod
    def single_cluster(cls, n: int) -> "Partition":
        return cls(np.ones(n, dtype=np.int64))

    @classmethod
    def from_clusters(cls, n: int, clusters: Iterable[Iterable[int]]) -> "Partition":
        """Build from node sets (1-based ids); every node must be covered once."""
        labels = np.zeros(n, dtype=np.int64)
        for k, members in enumerate(clusters, start=1):
            for v in members:
                if labels[v - 1]:
                    raise ValueError(f"node {v} assigned twice")
                labels[v - 1] = k
        if (labels == 0).any():
            missing = (np.flatnonzero(labels == 0) + 1).tolist()
            raise ValueError(f"nodes {missing} not assigned")
        return cls(labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def codes(self) -> np.ndarray:
        """0-based cluster index per node."""
        return self.labels - 1

    def clusters(self) -> list[set[int]]:
        out: list[set[int]] = [set() for _ in range(self.K)]
        for v, k in enumerate(self.labels.tolist(), start=1):
            out[k - 1].add(v)
        return out

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)

    def __hash__(self):
        return hash(self.labels.tobytes())

    def __repr__(self):
        return f"Partition(n={self.n}, K={self.K})"


def _check_node(H: Hypergraph, v: int) -> None:
    if not 1 <= v <= H.n:
        raise ValueError(f"node {v} outside [1, {H.n}]")


def degree(H: Hypergraph, v: int) -> int:
    """Weighted number of hyperedges containing ``v`` (with multiplicity)."""
    _check_node(H, v)
    return int(H.degrees[v - 1])


def volume(H: Hypergraph, nodes: Iterable[int]) -> int:
    """Sum of degrees over a node set."""
    nodes = list(nodes)
    for v in nodes:
        _check_node(H, v)
    if not nodes:
        return 0
    return int(H.degrees[np.asarray(nodes) - 1].sum())


def internal_edge_count(H: Hypergraph, nodes: Iterable[int]) -> int:
    """Weighted number of hyperedges whose nodes all lie in ``nodes``."""
    members = set(nodes)
    for v in members:
        _check_node(H, v)
    return int(sum(w for e, w in zip(H.edges, H.weights.tolist())
                   if members.issuperset(e)))


def _reduction(H: Hypergraph, edge_scale: np.ndarray) -> WeightedGraph:
    inc = H.incidence
    A = (inc @ sp.diags(edge_scale) @ inc.T).tocsr()
    A.setdiag(0)
    A.eliminate_zeros()
    return WeightedGraph(H.n, A)


def clique_reduction(H: Hypergraph) -> WeightedGraph:
    """Two-section graph: A(u, v) = sum_e w(e) m_e(u) m_e(v) for u != v."""
    if not H.edges:
        return WeightedGraph(H.n, sp.csr_matrix((H.n, H.n)))
    return _reduction(H, H.weights.astype(np.float64))


def weighted_clique_reduction(H: Hypergraph, edge_weights=None) -> WeightedGraph:
    """Degree-preserving clique reduction, each edge scaled by 1/(|e|-1).

    ``edge_weights`` optionally replaces ``H.weights`` (real-valued, one per
    stored edge).  Size-1 hyperedges cannot be expanded and are dropped with a
    warning.
    """
    w = H.weights.astype(np.float64) if edge_weights is None else np.asarray(edge_weights, dtype=np.float64)
    if len(w) != len(H.edges):
        raise ValueError("one weight per hyperedge expected")
    if len(H.edges) and H.sizes.min() < 2:
        keep = H.sizes >= 2
        logger.warning("dropping %d size-1 hyperedges from the weighted clique reduction",
                       int((~keep).sum()))
        w = w[keep]
        H = H.without_singletons()
    if not H.edges:
        return WeightedGraph(H.n, sp.csr_matrix((H.n, H.n)))
    return _reduction(H, w / (H.sizes - 1.0))


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def _as_text_stream(source):
    if isinstance(source, (str, os.PathLike)):
        return open(source, "r", encoding="utf-8"), True
    if isinstance(source, (bytes, bytearray)):
        return io.StringIO(source.decode("utf-8")), False
    if isinstance(source, io.BufferedIOBase) or "b" in getattr(source, "mode", ""):
        return io.TextIOWrapper(source, encoding="utf-8"), False
    return source, False


def load_hypergraph(source) -> Hypergraph:
    """Read the edge-list format.

    One hyperedge per line, whitespace-separated node ids, optional trailing
    ``w=<int>`` weight token.  ``#`` starts a comment line.  An optional first
    content line ``n=<int>`` fixes the node count; otherwise n is the largest
    node id seen.  ``source`` is a path, bytes, or a text/binary stream.
    """
    stream, close = _as_text_stream(source)
    try:
        lines = stream.read().splitlines()
    finally:
        if close:
            stream.close()

    n_header = None
    edges: list[tuple[int, ...]] = []
    weights: list[int] = []
    seen_content = False
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        tokens = text.split()
        if not seen_content and len(tokens) == 1 and tokens[0].startswith("n="):
            seen_content = True
            try:
                n_header = int(tokens[0][2:])
            except ValueError:
                raise HypergraphFormatError(lineno, f"bad node count {tokens[0]!r}") from None
            if n_header < 0:
                raise HypergraphFormatError(lineno, "negative node count")
            continue
        seen_content = True
        w = 1
        if tokens[-1].startswith("w="):
            try:
                w = int(tokens[-1][2:])
            except ValueError:
                raise HypergraphFormatError(lineno, f"bad weight {tokens[-1]!r}") from None
            if w < 1:
                raise HypergraphFormatError(lineno, f"weight {w} < 1")
            tokens = tokens[:-1]
        if not tokens:
            raise HypergraphFormatError(lineno, "hyperedge without nodes")
        try:
            nodes = tuple(int(t) for t in tokens)
        except ValueError:
            raise HypergraphFormatError(lineno, f"non-integer node id in {text!r}") from None
        if min(nodes) < 1:
            raise HypergraphFormatError(lineno, f"node id {min(nodes)} < 1")
        if n_header is not None and max(nodes) > n_header:
            raise HypergraphFormatError(lineno, f"node id {max(nodes)} > n={n_header}")
        edges.append(nodes)
        weights.append(w)

    n = n_header if n_header is not None else max((max(e) for e in edges), default=0)
    return Hypergraph(n, edges, weights)


def save_hypergraph(H: Hypergraph, target) -> None:
    """Write ``H`` in the edge-list format (always with an ``n=`` header)."""
    out = [f"n={H.n}"]
    for e, w in zip(H.edges, H.weights.tolist()):
        line = " ".join(map(str, e))
        out.append(line if w == 1 else f"{line} w={w}")
    text = "\n".join(out) + "\n"
    if isinstance(target, (str, os.PathLike)):
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        target.write(text)


def load_partition(source, n: int | None = None) -> Partition:
    """Read a partition file: line i holds the cluster id of node i."""
    stream, close = _as_text_stream(source)
    try:
        lines = stream.read().splitlines()
    finally:
        if close:
            stream.close()
    labels = []
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            labels.append(int(text))
        except ValueError:
            raise HypergraphFormatError(lineno, f"bad cluster id {text!r}") from None
    if n is not None and len(labels) != n:
        raise ValueError(f"partition has {len(labels)} labels, expected {n}")
    return Partition(labels)


def save_partition(P: Partition, target) -> None:
    text = "".join(f"{k}\n" for k in P.labels.tolist())
    if isinstance(target, (str, os.PathLike)):
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        target.write(text)

