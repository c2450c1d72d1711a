import numpy as np
import scipy.sparse as sp
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hypermod.bench import ari
from hypermod.hypercore import Hypergraph, Partition, weighted_clique_reduction
from hypermod.modularity import AonParams, estimate_aon_params, q_aon, q_strict, q_wclique, q_wsc
from hypermod.optimizers import (aon_hmll, cnm_like, graph_modularity, irmm, louvain, lsr,
                                 majority_share)
from hypermod.optimizers.base import child_seed
from hypermod.optimizers._work import AllOrNothingObjective, WorkingClustering, WscObjective

from conftest import hypergraph_and_partition, hypergraphs, make_two_triangles
import oracles

TRUTH = Partition([1, 1, 1, 2, 2, 2])


def moved(P, v, target_code):
    codes = P.codes.copy()
    codes[v] = target_code
    return Partition(codes + 1)


def adjacent_codes(H, P, v):
    out = set()
    for e in H.edges:
        if len(e) >= 2 and v + 1 in e:
            out.update(P.codes[u - 1] for u in e)
    out.discard(P.codes[v])
    return out


# ---------------------------------------------------------------- louvain

def test_louvain_two_triangle_graph():
    A = np.zeros((6, 6))
    for u, v in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]:
        A[u, v] = A[v, u] = 1
    G = sp.csr_matrix(A)
    P = louvain(G, seed=3)
    assert P == TRUTH
    assert graph_modularity(G, P) == pytest.approx(oracles.graph_modularity(A.tolist(), P.labels))


def test_louvain_degenerate_graphs():
    assert louvain(sp.csr_matrix(np.zeros((4, 4)))) == Partition.singletons(4)
    A = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert louvain(sp.csr_matrix(A)).K == 1


@settings(max_examples=30, deadline=None)
@given(hypergraphs(max_n=8), st.integers(0, 2 ** 16))
def test_louvain_is_locally_optimal(H, seed):
    G = weighted_clique_reduction(H)
    A = G.to_dense()
    P = louvain(G, seed=seed)
    base = oracles.graph_modularity(A.tolist(), P.labels.tolist())
    assert graph_modularity(G, P) == pytest.approx(base, abs=1e-12)
    for v in range(H.n):
        for c in set(P.codes.tolist()) - {P.codes[v]}:
            if A[v, P.codes == c].sum() > 0:
                Q = moved(P, v, c)
                assert oracles.graph_modularity(A.tolist(), Q.labels.tolist()) <= base + 1e-9


# ---------------------------------------------------------------- irmm

def test_majority_share_values():
    H = Hypergraph(6, [(1, 2, 3, 4), (2, 3, 4, 5)])
    uneven = Partition([1, 1, 1, 2, 2, 2])
    # raw shares 3/4 and 2/4, rescaled to mean 1
    assert majority_share(H, uneven).tolist() == pytest.approx([0.75 / 0.625, 0.5 / 0.625])
    even = Partition([1, 1, 2, 2, 3, 3])
    assert majority_share(H, even).tolist() == pytest.approx([1.0, 1.0])
    weighted = Hypergraph(6, [(1, 2, 3, 4), (2, 3, 4, 5)], [3, 1])
    w = majority_share(weighted, uneven)
    assert float((w * weighted.weights).sum()) == pytest.approx(4.0)


def test_irmm_two_triangles(two_triangles):
    res = irmm(two_triangles, seed=0)
    assert res.partition == TRUTH
    assert res.converged
    assert res.objective == pytest.approx(q_wclique(two_triangles, TRUTH))
    assert res.k_hat == 2


def test_irmm_single_pass_is_louvain(two_triangles):
    res = irmm(two_triangles, max_outer=1, seed=5)
    assert res.iterations == 1
    assert res.partition == louvain(weighted_clique_reduction(two_triangles),
                                    seed=child_seed(5, 0))


def test_irmm_rejects_edgeless():
    with pytest.raises(ValueError):
        irmm(Hypergraph(3, [(1,)]))
    with pytest.raises(ValueError):
        irmm(make_two_triangles(), max_outer=0)


# ---------------------------------------------------------------- lsr

def test_lsr_fixed_point_at_truth(two_triangles):
    res = lsr(two_triangles, init=TRUTH, setting="linear")
    assert res.partition == TRUTH
    assert res.iterations == 1 and res.converged
    assert res.events == []


def test_lsr_requires_matching_init(two_triangles):
    with pytest.raises(ValueError):
        lsr(two_triangles, init=Partition([1, 2, 3]))


@settings(max_examples=30, deadline=None)
@given(hypergraph_and_partition(max_n=8), st.sampled_from(["strict", "majority", "linear"]),
       st.integers(0, 1000))
def test_lsr_local_optimum_and_history(args, setting, seed):
    H, P = args
    res = lsr(H, init=P, setting=setting, seed=seed)
    Q = res.partition
    assert res.objective == pytest.approx(q_wsc(H, Q, setting), abs=1e-9)
    assert res.history[-1] == pytest.approx(res.objective, abs=1e-9)
    assert all(b > a for a, b in zip(res.history, res.history[1:]))
    assert res.objective >= q_wsc(H, P, setting) - 1e-12
    if res.converged:
        for v in range(H.n):
            for c in adjacent_codes(H, Q, v):
                assert q_wsc(H, moved(Q, v, c), setting) <= res.objective + 1e-9


def test_lsr_default_init_uses_irmm(two_triangles):
    res = lsr(two_triangles, seed=4)
    assert res.start_partition == irmm(two_triangles, seed=child_seed(4, 0)).partition
    assert res.partition == TRUTH


# ---------------------------------------------------------------- cnm

def test_cnm_two_triangles(two_triangles):
    for seed in range(5):
        res = cnm_like(two_triangles, seed=seed)
        assert ari(res.partition.labels, TRUTH.labels) == 1.0


def test_cnm_zero_budget_returns_singletons(two_triangles):
    res = cnm_like(two_triangles, max_steps=0)
    assert res.partition == Partition.singletons(6)
    assert res.iterations == 0 and not res.converged


def test_cnm_single_edge():
    H = Hypergraph(3, [(1, 2, 3)])
    res = cnm_like(H)
    # merging the lone edge leaves q = 1 - 1 = 0 against singletons at -1/27
    assert res.partition.K == 1
    assert res.objective == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(hypergraphs(max_n=7), st.integers(0, 1000))
def test_cnm_bounded_by_brute_force(H, seed):
    res = cnm_like(H, seed=seed)
    assert res.objective == pytest.approx(q_strict(H, res.partition), abs=1e-9)
    assert all(b > a for a, b in zip(res.history, res.history[1:]))
    best = max(oracles.q_strict(H, labels) for labels in oracles.set_partitions(range(H.n)))
    assert res.objective <= best + 1e-9
    assert res.objective >= q_strict(H, Partition.singletons(H.n)) - 1e-12


def test_cnm_deterministic(two_triangles):
    a, b = cnm_like(two_triangles, seed=9), cnm_like(two_triangles, seed=9)
    assert a.partition == b.partition and a.events == b.events


# ---------------------------------------------------------------- aon

def test_aon_two_triangles(two_triangles):
    res = aon_hmll(two_triangles, seed=0)
    assert res.partition == TRUTH
    assert res.converged
    assert res.params == estimate_aon_params(two_triangles, res.start_partition)
    assert res.objective == pytest.approx(q_aon(two_triangles, TRUTH, res.params))


def test_aon_zero_rounds_returns_singletons(two_triangles):
    res = aon_hmll(two_triangles, max_outer=0)
    assert res.partition == Partition.singletons(6)


def test_aon_injected_params_skip_estimation(two_triangles):
    params = AonParams.strict_equivalent(two_triangles)
    res = aon_hmll(two_triangles, params=params, seed=1)
    assert res.start_partition is None
    assert res.params is params
    assert res.objective == pytest.approx(two_triangles.num_edges * q_strict(two_triangles,
                                                                              res.partition))


def test_aon_unknown_start():
    with pytest.raises(ValueError):
        aon_hmll(make_two_triangles(), start_clusters="spectral")


@settings(max_examples=30, deadline=None)
@given(hypergraphs(max_n=8), st.integers(0, 1000))
def test_aon_local_optimum(H, seed):
    assume(H.max_size >= 2)
    res = aon_hmll(H, seed=seed, start_clusters="singletons")
    Q, params = res.partition, res.params
    assert res.objective == pytest.approx(q_aon(H, Q, params), rel=1e-9, abs=1e-9)
    assert all(b > a for a, b in zip(res.history, res.history[1:]))
    scale = 1e-8 * max(1.0, abs(res.objective))
    for v in range(H.n):
        for c in adjacent_codes(H, Q, v):
            assert q_aon(H, moved(Q, v, c), params) <= res.objective + scale


# ---------------------------------------------------------------- deltas

@settings(max_examples=60, deadline=None)
@given(hypergraph_and_partition(max_n=8))
def test_strict_and_aon_move_deltas_match_recompute(args):
    H, P = args
    work = WorkingClustering(H, P.codes)
    strict = AllOrNothingObjective.strict(work)
    params = estimate_aon_params(H, P)
    aon = AllOrNothingObjective.aon(work, params)
    base_s, base_a = q_strict(H, P), q_aon(H, P, params)
    for v in range(H.n):
        ds, da = strict.move_deltas(v), aon.move_deltas(v)
        assert set(ds) == adjacent_codes(H, P, v)
        for c in ds:
            Q = moved(P, v, c)
            assert ds[c] == pytest.approx(q_strict(H, Q) - base_s, abs=1e-10)
            assert da[c] == pytest.approx(q_aon(H, Q, params) - base_a, rel=1e-7, abs=1e-7)


@settings(max_examples=60, deadline=None)
@given(hypergraph_and_partition(max_n=8), st.sampled_from(["strict", "majority", "linear"]))
def test_wsc_move_deltas_match_recompute(args, setting):
    H, P = args
    work = WorkingClustering(H, P.codes)
    obj = WscObjective(work, setting)
    base = q_wsc(H, P, setting)
    for v in range(H.n):
        for c, d in obj.move_deltas(v).items():
            assert d == pytest.approx(q_wsc(H, moved(P, v, c), setting) - base, abs=1e-10)


@settings(max_examples=60, deadline=None)
@given(hypergraph_and_partition(max_n=8), st.data())
def test_merge_deltas_match_recompute(args, data):
    H, P = args
    work = WorkingClustering(H, P.codes)
    obj = AllOrNothingObjective.strict(work)
    base = q_strict(H, P)
    for c in work.clusters():
        for b, d in obj.pair_merge_deltas(c).items():
            Q = Partition(np.where(P.codes == c, b, P.codes) + 1)
            assert d == pytest.approx(q_strict(H, Q) - base, abs=1e-10)
            assert obj.merge_delta((c, b)) == pytest.approx(d, abs=1e-12)
    group = data.draw(st.sets(st.sampled_from(work.clusters()), min_size=1))
    target = min(group)
    Q = Partition(np.where(np.isin(P.codes, list(group)), target, P.codes) + 1)
    assert obj.merge_delta(group) == pytest.approx(q_strict(H, Q) - base, abs=1e-10)


def test_truth_seeded_lsr_reaches_global_max(two_triangles):
    for setting in ("strict", "majority", "linear"):
        best = max(q_wsc(two_triangles, Partition(labels), setting)
                   for labels in oracles.set_partitions(range(6)))
        res = lsr(two_triangles, init=TRUTH, setting=setting)
        assert res.partition == TRUTH
        assert res.objective == pytest.approx(best, abs=1e-12)


def test_lsr_local_optimality_at_n50():
    from hypermod.generators import DchsbmParams, gen_dchsbm
    H, _ = gen_dchsbm(DchsbmParams(n=50, K=3, p={2: 0.5, 3: 0.5},
                                   edges_per_size={2: 120, 3: 50}), seed=11)
    res = lsr(H, init=Partition.singletons(50), seed=2)
    assert res.converged
    for v in range(H.n):
        for c in adjacent_codes(H, res.partition, v):
            assert q_wsc(H, moved(res.partition, v, c), "linear") <= res.objective + 1e-9
