"""Partition vectors: how a clustering splits each hyperedge.

A partition vector is a non-increasing tuple of positive ints, e.g. ``(2, 1)``
for a size-3 hyperedge with two nodes in one cluster and one in another.
Plain tuples are used throughout; :func:`partition_vector` validates one.
"""
from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .hypercore import Hypergraph, Partition

PartitionVector = tuple  # non-increasing tuple[int, ...]


def partition_vector(parts: Iterable[int]) -> PartitionVector:
    """Validate and return ``parts`` as a partition vector."""
    p = tuple(int(x) for x in parts)
    if not p:
        raise ValueError("partition vector must be non-empty")
    if p[-1] < 1:
        raise ValueError("partition vector entries must be >= 1")
    if any(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"partition vector {p} is not non-increasing")
    return p


def integer_partitions(s: int, max_parts: int | None = None) -> Iterator[PartitionVector]:
    """All partition vectors of size ``s`` with at most ``max_parts`` parts."""
    if max_parts is None:
        max_parts = s

    def rec(remaining, largest, prefix):
        if remaining == 0:
            yield tuple(prefix)
            return
        if len(prefix) == max_parts:
            return
        for part in range(min(remaining, largest), 0, -1):
            prefix.append(part)
            yield from rec(remaining - part, part, prefix)
            prefix.pop()

    if s >= 1 and max_parts >= 1:
        yield from rec(s, s, [])


def tuple_multiplicity(p: Sequence[int]) -> int:
    """Number of label patterns of an s-tuple represented by one ordered
    assignment of distinct labels to the parts of ``p``.

    ``s! / (prod p_j! * prod_r m_r!)`` where ``m_r`` counts parts of equal
    size.  With it, ``sum_p tuple_multiplicity(p) * Vol(C_p) = Vol(V)**s``.
    """
    s = sum(p)
    denom = 1
    for x in p:
        denom *= math.factorial(x)
    for m in Counter(p).values():
        denom *= math.factorial(m)
    return math.factorial(s) // denom


def split_profile(edge: Sequence[int], partition: Partition) -> PartitionVector:
    """Sizes of the non-empty parts of ``edge`` under ``partition``, descending."""
    labels = partition.labels
    n = len(labels)
    counts: Counter = Counter()
    for v in edge:
        if not 1 <= v <= n:
            raise ValueError(f"node {v} outside [1, {n}]")
        counts[labels[v - 1]] += 1
    return tuple(sorted(counts.values(), reverse=True))


def split_counts(H: Hypergraph, partition: Partition) -> dict[PartitionVector, int]:
    """Weighted number of hyperedges split into each partition vector.

    Vectors that no hyperedge realises are absent (count 0).
    """
    _check_sizes(H, partition)
    out: dict[PartitionVector, int] = {}
    for e, w in zip(H.edges, H.weights.tolist()):
        p = split_profile(e, partition)
        out[p] = out.get(p, 0) + w
    return out


@lru_cache(maxsize=None)
def _set_partitions(J: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Set partitions of ``range(J)`` as tuples of blocks."""
    if J == 0:
        return ((),)
    out = []
    for rest in _set_partitions(J - 1):
        # put J-1 in its own block or into an existing one
        out.append(rest + ((J - 1,),))
        for i in range(len(rest)):
            out.append(rest[:i] + (rest[i] + (J - 1,),) + rest[i + 1:])
    return tuple(out)


def _power_sums(vols: Sequence, max_power: int) -> list:
    return [sum(v ** m for v in vols) for m in range(max_power + 1)]


def injective_power_sum(vols: Sequence, p: Sequence[int], power_sums=None):
    """sum over ordered tuples of distinct indices (l_1..l_J) of prod vols[l_j]**p_j.

    Evaluated by Moebius inversion over set partitions of the J parts, so
    the cost does not grow with ``len(vols)`` beyond the power sums.
    Integer inputs give an exact integer result.
    """
    J = len(p)
    if J > len(vols):
        return 0
    if power_sums is None:
        power_sums = _power_sums(vols, sum(p))
    total = 0
    for blocks in _set_partitions(J):
        term = 1
        for b in blocks:
            term *= power_sums[sum(p[j] for j in b)]
            if len(b) > 1:
                term *= (-1) ** (len(b) - 1) * math.factorial(len(b) - 1)
        total += term
    return total


def cluster_volumes(H: Hypergraph, partition: Partition) -> list[int]:
    """Exact integer volume of each cluster, in label order."""
    _check_sizes(H, partition)
    vols = [0] * partition.K
    for d, k in zip(H.degrees.tolist(), partition.labels.tolist()):
        vols[k - 1] += d
    return vols


def partition_vector_volume(H: Hypergraph, partition: Partition, p: Sequence[int]):
    """Generalised volume Vol_H(C_p).

    Sum over ordered tuples of distinct cluster labels (l_1..l_J) of
    prod_j Vol(C_{l_j})**p_j.  Zero when ``p`` has more parts than there are
    clusters.  Symmetric vectors like ``(1, 1)`` are not divided by their
    symmetry factor.
    """
    p = partition_vector(p)
    return injective_power_sum(cluster_volumes(H, partition), p)


def majority_counts(H: Hypergraph, partition: Partition) -> dict[tuple[int, int, int], int]:
    """Table (k, s, c) -> weighted number of size-s hyperedges with exactly c
    nodes in their majority cluster k, for c > s/2.

    Edges whose largest part is not a strict majority are not counted.
    """
    _check_sizes(H, partition)
    labels = partition.labels
    out: dict[tuple[int, int, int], int] = {}
    for e, w in zip(H.edges, H.weights.tolist()):
        s = len(e)
        k, c = Counter(int(labels[v - 1]) for v in e).most_common(1)[0]
        if 2 * c > s:
            key = (k, s, c)
            out[key] = out.get(key, 0) + w
    return out


def _check_sizes(H: Hypergraph, partition: Partition) -> None:
    if partition.n != H.n:
        raise ValueError(f"partition covers {partition.n} nodes, hypergraph has {H.n}")
