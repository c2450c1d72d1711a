import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hypermod.hypercore import Hypergraph, Partition
from hypermod.modularity import (AON_EPS, AonParams, UndefinedModularityError, aon_affinity,
                                 aon_constant, estimate_aon_params, q_aon, q_strict,
                                 q_symmetric, q_wclique, q_wsc, wsc_weight)
from hypermod.partvec import cluster_volumes, integer_partitions, split_counts, \
    tuple_multiplicity, injective_power_sum

from conftest import hypergraph_and_partition
import oracles

SINGLE = Partition.single_cluster(4)
SINGLETONS = Partition.singletons(4)


def test_wclique_h0(h0, p0):
    assert q_wclique(h0, SINGLE) == pytest.approx(0, abs=1e-15)
    assert q_wclique(h0, p0) == pytest.approx(0.238095, abs=1e-6)
    assert q_wclique(h0, SINGLETONS) == pytest.approx(-13 / 42, abs=1e-12)


def test_strict_h0(h0, p0):
    assert q_strict(h0, SINGLE) == pytest.approx(0, abs=1e-15)
    assert q_strict(h0, p0) == pytest.approx((2 - (50 / 49 + 91 / 343)) / 3, abs=1e-12)
    assert q_strict(h0, p0) == pytest.approx(0.238095, abs=1e-6)
    assert q_strict(h0, SINGLETONS) == pytest.approx(-0.201166, abs=1e-6)


def test_wsc_h0(h0, p0):
    assert q_wsc(h0, p0, "strict") == pytest.approx(0.238095, abs=1e-6)
    assert q_wsc(h0, p0, "linear") == pytest.approx(0.297052, abs=1e-6)
    assert q_wsc(h0, p0, "majority") == pytest.approx(0.326531, abs=1e-6)


def test_wsc_custom_table(h0, p0):
    table = {(2, 2): 1.0, (3, 2): 0.5, (3, 3): 1.0}
    assert q_wsc(h0, p0, table) == pytest.approx(
        (q_wsc(h0, p0, "strict") + q_wsc(h0, p0, "majority")) / 2)


def test_wsc_weight_settings():
    assert wsc_weight("strict", 3, 3) == 1 and wsc_weight("strict", 3, 2) == 0
    assert wsc_weight("majority", 4, 3) == 1 and wsc_weight("majority", 4, 2) == 0
    assert wsc_weight("linear", 3, 2) == pytest.approx(2 / 3)
    with pytest.raises(ValueError):
        wsc_weight("bogus", 3, 3)


def test_undefined_inputs():
    with pytest.raises(UndefinedModularityError):
        q_strict(Hypergraph(3), Partition.singletons(3))
    with pytest.raises(UndefinedModularityError):
        q_wclique(Hypergraph(3, [(1,), (2,)]), Partition.singletons(3))


def test_aon_estimates_h0(h0):
    params = estimate_aon_params(h0, Partition([1, 1, 1, 2]))
    assert params.omega1[2] == pytest.approx(1 / 37)
    assert params.omega0[2] == pytest.approx(1 / 12)
    assert params.beta[2] == pytest.approx(math.log(12 / 37))
    assert params.beta[2] == pytest.approx(-1.12601, abs=1e-5)
    assert params.gamma[2] == pytest.approx((1 / 37 - 1 / 12) / math.log(12 / 37))
    assert params.gamma[2] == pytest.approx(0.050006, abs=1e-5)
    assert params.omega0[3] == AON_EPS
    assert params.beta[3] == pytest.approx(math.log(params.omega1[3] / AON_EPS))


def test_aon_single_cluster_init_clamps(h0):
    params = estimate_aon_params(h0, SINGLE)
    assert all(w == AON_EPS for w in params.omega0.values())


def test_aon_size_missing_from_data():
    H = Hypergraph(4, [(1, 2), (3, 4)])
    params = estimate_aon_params(H, Partition([1, 1, 2, 2]))
    assert params.sizes() == [2]
    with pytest.raises(ValueError):
        q_aon(Hypergraph(4, [(1, 2, 3)]), Partition([1, 1, 2, 2]), params)


def test_aon_beta_zero_uses_continuity():
    params = AonParams.from_omegas({2: 0.3}, {2: 0.3})
    assert params.beta[2] == 0 and params.gamma[2] == 0.3


def test_aon_strict_equivalence_h0(h0, p0):
    params = AonParams.strict_equivalent(h0)
    assert q_aon(h0, p0, params) == pytest.approx(0.714286, abs=1e-6)
    assert q_aon(h0, p0, params) == pytest.approx(3 * q_strict(h0, p0), abs=1e-12)
    assert q_aon(h0, SINGLE, params) == pytest.approx(0, abs=1e-12)
    zero = AonParams({2: 0.0, 3: 0.0}, {2: 1.0, 3: 1.0})
    assert q_aon(h0, p0, zero) == 0


def test_symmetric_unit_affinity(h0, p0):
    # with a unit affinity only the volume term is left; weighted by tuple
    # multiplicity it sums to sum_s Vol(V)**s
    value = q_symmetric(h0, p0, lambda p: 1.0)
    assert value == pytest.approx(-(7 ** 2 + 7 ** 3))


def test_symmetric_constant_e(h0, p0):
    counts = split_counts(h0, p0)
    vols = cluster_volumes(h0, p0)
    weighted = sum(tuple_multiplicity(p) * injective_power_sum(vols, p)
                   for s in (2, 3) for p in integer_partitions(s) if len(p) <= 2)
    expected = sum(counts.values()) - math.e * weighted
    assert q_symmetric(h0, p0, lambda p: math.e) == pytest.approx(expected)


def test_symmetric_rejects_non_positive(h0, p0):
    with pytest.raises(ValueError):
        q_symmetric(h0, p0, lambda p: 0.0)


def test_aon_affinity_needs_every_size():
    H = Hypergraph(5, [(1, 2, 3), (3, 4, 5)])
    params = estimate_aon_params(H, Partition([1, 1, 1, 2, 2]))
    with pytest.raises(ValueError):
        q_symmetric(H, Partition([1, 1, 1, 2, 2]), aon_affinity(params))


def test_symmetric_aon_affinity_offset_is_constant(h0, p0):
    params = estimate_aon_params(h0, Partition([1, 1, 1, 2]))
    omega = aon_affinity(params)
    offsets = [q_symmetric(h0, P, omega) - q_aon(h0, P, params)
               for P in (p0, SINGLE, SINGLETONS, Partition([1, 2, 1, 2]))]
    assert np.ptp(offsets) < 1e-9
    assert offsets[0] == pytest.approx(aon_constant(h0, params))


@settings(max_examples=60, deadline=None)
@given(hypergraph_and_partition(max_n=8), st.sampled_from(["strict", "majority", "linear"]))
def test_criteria_match_naive_oracles(args, setting):
    H, P = args
    labels = P.labels.tolist()
    assert q_strict(H, P) == pytest.approx(oracles.q_strict(H, labels), abs=1e-12)
    assert q_wclique(H, P) == pytest.approx(oracles.q_wclique(H, labels), abs=1e-12)
    assert q_wsc(H, P, setting) == pytest.approx(oracles.q_wsc(H, labels, setting), abs=1e-12)


@settings(max_examples=80, deadline=None)
@given(hypergraph_and_partition())
def test_range_and_identities(args):
    H, P = args
    for q in (q_strict(H, P), q_wclique(H, P), q_wsc(H, P, "linear"), q_wsc(H, P, "majority")):
        assert -1 <= q <= 1
    assert abs(q_wsc(H, P, "strict") - q_strict(H, P)) <= 1e-12
    params = AonParams.strict_equivalent(H)
    assert abs(q_aon(H, P, params) - H.num_edges * q_strict(H, P)) <= 1e-10
    one = Partition.single_cluster(H.n)
    assert abs(q_strict(H, one)) <= 1e-12 and abs(q_wclique(H, one)) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(hypergraph_and_partition(), st.randoms(use_true_random=False))
def test_relabel_and_permutation_invariance(args, rnd):
    H, P = args
    perm = list(range(1, H.n + 1))
    rnd.shuffle(perm)  # node v becomes perm[v-1]
    H2 = Hypergraph(H.n, [[perm[v - 1] for v in e] for e in H.edges], H.weights.tolist())
    labels2 = [0] * H.n
    shift = rnd.randint(1, 50)
    for v in range(1, H.n + 1):
        labels2[perm[v - 1] - 1] = P.labels[v - 1] + shift
    P2 = Partition(labels2)
    for f in (q_strict, q_wclique, lambda h, p: q_wsc(h, p, "linear")):
        assert f(H2, P2) == pytest.approx(f(H, P), abs=1e-12)
    params = estimate_aon_params(H, P)
    assert q_aon(H2, P2, params) == pytest.approx(q_aon(H, P, params), rel=1e-9, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(hypergraph_and_partition(), st.integers(1, 10))
def test_loops_never_contribute(args, node):
    H, P = args
    v = min(node, H.n)
    H2 = Hypergraph(H.n, list(H.edges) + [(v,)], H.weights.tolist() + [2])
    assert q_strict(H2, P) == pytest.approx(q_strict(H, P), abs=1e-12)
    assert q_wclique(H2, P) == pytest.approx(q_wclique(H, P), abs=1e-12)
    assert q_wsc(H2, P, "majority") == pytest.approx(q_wsc(H, P, "majority"), abs=1e-12)
    params = estimate_aon_params(H, P)
    assert estimate_aon_params(H2, P) == params
    assert q_aon(H2, P, params) == pytest.approx(q_aon(H, P, params), abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(hypergraph_and_partition(max_n=7), hypergraph_and_partition(max_n=7))
def test_symmetric_offset_partition_independent(a, b):
    H, P = a
    _, Q = b
    Q = Partition([Q.labels[i % len(Q.labels)] for i in range(H.n)])
    assume(set(H.size_counts()) == set(range(2, H.max_size + 1)))
    params = estimate_aon_params(H, P)
    omega = aon_affinity(params)
    d1 = q_symmetric(H, P, omega) - q_aon(H, P, params)
    d2 = q_symmetric(H, Q, omega) - q_aon(H, Q, params)
    scale = max(1.0, abs(d1))
    assert abs(d1 - d2) <= 1e-9 * scale
