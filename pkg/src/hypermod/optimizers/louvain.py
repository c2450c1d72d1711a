"""Two-phase Louvain for weighted graphs (Newman-Girvan modularity)."""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from ..hypercore import Partition, WeightedGraph


def graph_modularity(G: WeightedGraph | sp.spmatrix, partition: Partition) -> float:
    """(1/2m) sum_{ij} [A_ij - k_i k_j / 2m] 1{c_i = c_j}."""
    A = G.adjacency if isinstance(G, WeightedGraph) else sp.csr_matrix(G)
    k = np.asarray(A.sum(axis=1)).ravel()
    m2 = k.sum()
    if m2 == 0:
        return 0.0
    codes = partition.codes
    S = sp.csr_matrix((np.ones(len(codes)), (np.arange(len(codes)), codes)),
                      shape=(len(codes), partition.K))
    inner = (S.T @ A @ S).diagonal().sum()
    tot = np.bincount(codes, weights=k, minlength=partition.K)
    return float(inner / m2 - (tot ** 2).sum() / m2 ** 2)


def _local_moves(A: sp.csr_matrix, rng: np.random.Generator, tol: float, init=None):
    N = A.shape[0]
    k = np.asarray(A.sum(axis=1)).ravel()
    m2 = float(k.sum())
    comm = list(range(N)) if init is None else [int(c) for c in init]
    if m2 == 0:
        return np.asarray(comm), False
    tot = np.bincount(comm, weights=k, minlength=N).tolist()
    k = k.tolist()
    indptr, indices, data = A.indptr, A.indices.tolist(), A.data.tolist()
    improved = False
    while True:
        moves = 0
        for i in rng.permutation(N).tolist():
            ci = comm[i]
            links: dict[int, float] = {}
            for idx in range(indptr[i], indptr[i + 1]):
                j = indices[idx]
                if j != i:
                    links[comm[j]] = links.get(comm[j], 0.0) + data[idx]
            ki = k[i]
            tot[ci] -= ki
            best = ci
            best_gain = links.get(ci, 0.0) - ki * tot[ci] / m2
            for c in sorted(links):
                gain = links[c] - ki * tot[c] / m2
                if gain > best_gain + tol:
                    best, best_gain = c, gain
            tot[best] += ki
            if best != ci:
                comm[i] = best
                moves += 1
        if moves == 0:
            break
        improved = True
    return np.asarray(comm), improved


def _aggregate_levels(A: sp.csr_matrix, assignment: np.ndarray, rng, tol: float) -> np.ndarray:
    while True:
        K = int(assignment.max()) + 1
        if K == 1:
            return assignment
        S = sp.csr_matrix((np.ones(len(assignment)), (np.arange(len(assignment)), assignment)),
                          shape=(len(assignment), K))
        comm, improved = _local_moves((S.T @ A @ S).tocsr(), rng, tol)
        if not improved:
            return assignment
        assignment = np.unique(comm, return_inverse=True)[1][assignment]


def louvain(G: WeightedGraph | sp.spmatrix, seed=0, tol: float = 1e-12) -> Partition:
    """Partition of ``G`` that no single-node move improves.

    Each level sweeps nodes in a seeded random order, moving a node to the
    neighbouring community with the largest strictly positive gain (ties go
    to the lowest community id), then aggregates communities into nodes.
    A final sweep over the original nodes restarts the levels whenever it
    finds an improving move.
    """
    A = G.adjacency if isinstance(G, WeightedGraph) else G
    A = sp.csr_matrix(A, dtype=np.float64)
    rng = np.random.default_rng(seed)
    assignment = np.arange(A.shape[0])
    if A.shape[0] == 0:
        return Partition(assignment)
    while True:
        assignment = _aggregate_levels(A, assignment, rng, tol)
        # moves made on aggregated nodes can leave single nodes misplaced
        comm, improved = _local_moves(A, rng, tol, init=assignment)
        if not improved:
            break
        assignment = np.unique(comm, return_inverse=True)[1]
    return Partition(assignment + 1)
