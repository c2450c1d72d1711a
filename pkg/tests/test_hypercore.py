import io
import logging

import numpy as np
import pytest
from hypothesis import given, settings

from hypermod.hypercore import (Hypergraph, HypergraphFormatError, Partition, clique_reduction,
                                degree, internal_edge_count, load_hypergraph, load_partition,
                                save_hypergraph, save_partition, volume,
                                weighted_clique_reduction)

from conftest import hypergraph_and_partition, hypergraphs
import oracles


def test_load_small_file():
    H = load_hypergraph(io.StringIO("1 2\n1 2 3\n3 4\n"))
    assert H.n == 4
    assert H.size_counts() == {2: 2, 3: 1}
    assert H.weights.tolist() == [1, 1, 1]


def test_duplicate_lines_merge_into_weight():
    H = load_hypergraph(io.StringIO("1 2\n1 2\n"))
    assert H.edges == ((1, 2),)
    assert H.weights.tolist() == [2]


def test_zero_node_id_names_line():
    with pytest.raises(HypergraphFormatError) as err:
        load_hypergraph(io.StringIO("1 0 3\n"))
    assert err.value.lineno == 1


@pytest.mark.parametrize("text, line", [
    ("1 2\n# note\n2 x\n", 3),
    ("1 2 w=0\n", 1),
    ("n=3\n1 4\n", 2),
    ("1 -2\n", 1),
    ("1 2 w=abc\n", 1),
])
def test_parse_errors(text, line):
    with pytest.raises(HypergraphFormatError) as err:
        load_hypergraph(io.StringIO(text))
    assert err.value.lineno == line


def test_header_comments_and_weights(tmp_path):
    path = tmp_path / "h.txt"
    path.write_text("# a comment\nn=6\n3 1 w=4\n\n2 5\n")
    H = load_hypergraph(path)
    assert H.n == 6
    assert H.edges == ((1, 3), (2, 5))
    assert H.weights.tolist() == [4, 1]
    assert degree(H, 6) == 0


def test_load_from_bytes():
    H = load_hypergraph(b"1 2 3\n")
    assert H.n == 3 and H.edges == ((1, 2, 3),)


def test_degrees_h0(h0):
    assert degree(h0, 1) == 2
    assert degree(h0, 4) == 1
    assert degree(Hypergraph(3), 2) == 0
    with pytest.raises(ValueError):
        degree(h0, 5)
    with pytest.raises(ValueError):
        degree(h0, 0)


def test_volumes_h0(h0):
    assert volume(h0, {1, 2}) == 4
    assert volume(h0, range(1, 5)) == 7
    assert volume(h0, set()) == 0
    with pytest.raises(ValueError):
        volume(h0, {9})


def test_internal_edge_counts_h0(h0):
    assert internal_edge_count(h0, {1, 2}) == 1
    assert internal_edge_count(h0, {1, 2, 3}) == 2
    assert internal_edge_count(h0, {1, 2, 3, 4}) == 3
    with pytest.raises(ValueError):
        internal_edge_count(h0, {0})


def test_multiset_degree_counts_multiplicity():
    H = Hypergraph(3, [(1, 1, 2)])
    assert degree(H, 1) == 2
    assert H.sizes.tolist() == [3]


def test_clique_reduction_h0(h0):
    A = clique_reduction(h0).to_dense()
    expected = np.zeros((4, 4))
    for (u, v), w in {(1, 2): 2, (1, 3): 1, (2, 3): 1, (3, 4): 1}.items():
        expected[u - 1, v - 1] = expected[v - 1, u - 1] = w
    np.testing.assert_array_equal(A, expected)


def test_clique_reduction_trivial_cases():
    tri = clique_reduction(Hypergraph(3, [(1, 2, 3)])).to_dense()
    np.testing.assert_array_equal(tri, np.ones((3, 3)) - np.eye(3))
    assert not clique_reduction(Hypergraph(4)).to_dense().any()


def test_weighted_clique_reduction_h0(h0):
    G = weighted_clique_reduction(h0)
    assert G.weight(1, 2) == pytest.approx(1.5)
    assert G.weight(1, 3) == pytest.approx(0.5)
    assert G.weight(2, 3) == pytest.approx(0.5)
    assert G.weight(3, 4) == pytest.approx(1.0)
    assert G.to_dense()[0].sum() == pytest.approx(2.0)


def test_weighted_reduction_drops_loops_with_warning(caplog):
    H = Hypergraph(3, [(1,), (1, 2), (2, 3)])
    with caplog.at_level(logging.WARNING):
        G = weighted_clique_reduction(H)
    assert "size-1" in caplog.text
    np.testing.assert_allclose(G.to_dense().sum(1), [1, 2, 1])


def test_partition_relabels_by_first_appearance():
    P = Partition([7, 7, 3, 9, 3])
    assert P.labels.tolist() == [1, 1, 2, 3, 2]
    assert P.K == 3
    assert P == Partition([2, 2, 1, 5, 1])
    assert P.clusters() == [{1, 2}, {3, 5}, {4}]
    assert Partition.from_clusters(5, [{3, 5}, {1, 2}, {4}]) == P


def test_partition_from_clusters_rejects_bad_cover():
    with pytest.raises(ValueError):
        Partition.from_clusters(3, [{1, 2}])
    with pytest.raises(ValueError):
        Partition.from_clusters(3, [{1, 2}, {2, 3}])


def test_partition_file_round_trip(tmp_path):
    P = Partition([2, 2, 1, 3])
    path = tmp_path / "p.txt"
    save_partition(P, path)
    assert path.read_text() == "1\n1\n2\n3\n"
    assert load_partition(path) == P
    with pytest.raises(ValueError):
        load_partition(path, n=5)


@settings(max_examples=60, deadline=None)
@given(hypergraphs(allow_loops=True))
def test_degree_sum_equals_total_volume(H):
    total = sum(s * m for s, m in H.size_counts().items())
    assert sum(degree(H, v) for v in range(1, H.n + 1)) == total
    assert volume(H, range(1, H.n + 1)) == total
    assert internal_edge_count(H, range(1, H.n + 1)) == H.num_edges


@settings(max_examples=60, deadline=None)
@given(hypergraphs())
def test_weighted_reduction_preserves_degrees(H):
    G = weighted_clique_reduction(H)
    np.testing.assert_allclose(G.to_dense().sum(1), H.degrees, atol=1e-12)
    A = G.to_dense()
    np.testing.assert_allclose(A, A.T)
    assert not np.diag(A).any()


@settings(max_examples=60, deadline=None)
@given(hypergraphs())
def test_weighted_reduction_matches_naive(H):
    naive = oracles.wclique_matrix(H)
    A = weighted_clique_reduction(H).to_dense()
    for u in range(1, H.n + 1):
        for v in range(1, H.n + 1):
            assert A[u - 1, v - 1] == pytest.approx(float(naive[u][v]))


@settings(max_examples=60, deadline=None)
@given(hypergraphs(max_size=2))
def test_two_uniform_reductions_coincide(H):
    np.testing.assert_allclose(clique_reduction(H).to_dense(),
                               weighted_clique_reduction(H).to_dense())
    A = np.zeros((H.n, H.n))
    for (u, v), w in zip(H.edges, H.weights):
        A[u - 1, v - 1] += w
        A[v - 1, u - 1] += w
    np.testing.assert_array_equal(clique_reduction(H).to_dense(), A)


@settings(max_examples=60, deadline=None)
@given(hypergraphs(allow_loops=True))
def test_save_load_round_trip(H):
    buf = io.StringIO()
    save_hypergraph(H, buf)
    assert load_hypergraph(io.StringIO(buf.getvalue())) == H


@settings(max_examples=30, deadline=None)
@given(hypergraph_and_partition())
def test_partition_round_trip(args):
    _, P = args
    buf = io.StringIO()
    save_partition(P, buf)
    assert load_partition(io.StringIO(buf.getvalue())) == P
