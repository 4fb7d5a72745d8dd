import networkx as nx
import numpy as np
import pytest

from lrcm.core import (Permutation, SparseSymMatrix, bandwidth, build_laplacian,
                       graph_from_edges, graph_from_networkx, graph_to_networkx,
                       permute_symmetric, relabel)
from lrcm.errors import InputError
from lrcm.verify import gen_edgeless_graph, gen_random_graph

PATH4_L = np.array([[1, 0, 0, -1],
                    [0, 1, -1, 0],
                    [0, -1, 2, -1],
                    [-1, 0, -1, 2]])


def test_graph_from_edges(two_pairs):
    assert two_pairs.n == 4
    assert two_pairs.m == 2
    assert two_pairs.neighbors(1) == [3]
    assert two_pairs.neighbors(4) == [2]
    assert two_pairs.edges() == [(1, 3), (2, 4)]
    assert two_pairs.degrees.tolist() == [1, 1, 1, 1]


def test_graph_from_edges_zero_based():
    g = graph_from_edges(3, [(0, 2)], index_base=0)
    assert g.edges() == [(1, 3)]


def test_graph_from_edges_rejects_self_loop():
    with pytest.raises(InputError, match="self-loop at node 2"):
        graph_from_edges(3, [(1, 2), (2, 2)])


def test_graph_from_edges_rejects_duplicate():
    with pytest.raises(InputError, match=r"duplicate edge \(1, 2\)"):
        graph_from_edges(3, [(1, 2), (2, 1)])


def test_graph_from_edges_sanitize():
    g = graph_from_edges(3, [(1, 2), (2, 1), (3, 3), (2, 3)], sanitize=True)
    assert g.edges() == [(1, 2), (2, 3)]


def test_graph_from_edges_rejects_out_of_range():
    with pytest.raises(InputError, match="outside"):
        graph_from_edges(4, [(1, 5)])
    with pytest.raises(InputError):
        graph_from_edges(4, [(0, 1)])


def test_empty_graph():
    g = graph_from_edges(0, [])
    assert g.n == 0 and g.m == 0
    assert build_laplacian(g).nnz == 0


def test_networkx_round_trip(four_components):
    nxg = graph_to_networkx(four_components)
    assert nxg.number_of_nodes() == 13
    assert nxg.number_of_edges() == 10
    assert graph_from_networkx(nxg) == four_components


def test_graph_from_networkx_relabels_sorted():
    nxg = nx.Graph([(10, 30), (20, 30)])
    assert graph_from_networkx(nxg).edges() == [(1, 3), (2, 3)]


def test_build_laplacian(path4):
    laplacian = build_laplacian(path4)
    np.testing.assert_array_equal(laplacian.to_dense(), PATH4_L)
    assert laplacian.data.dtype == np.int64
    assert laplacian.is_symmetric()
    assert laplacian.row_sums().tolist() == [0, 0, 0, 0]


def test_laplacian_keeps_zero_diagonal():
    laplacian = build_laplacian(gen_edgeless_graph(3))
    assert laplacian.nnz == 3
    assert laplacian.diagonal().tolist() == [0, 0, 0]
    np.testing.assert_array_equal(laplacian.to_dense(), np.zeros((3, 3)))


def test_laplacian_rows_are_sorted():
    g = gen_random_graph(60, 150, seed=3)
    laplacian = build_laplacian(g)
    assert laplacian.nnz == 2 * g.m + g.n
    for i in range(g.n):
        row = laplacian.indices[laplacian.indptr[i]:laplacian.indptr[i + 1]]
        assert np.all(np.diff(row) > 0)
        assert laplacian.entry(i, i) == g.degrees[i]


def test_permute_symmetric_path4(path4, path4_lhat):
    lhat = permute_symmetric(build_laplacian(path4), Permutation.from_labels([2, 3, 4, 1]))
    assert lhat == path4_lhat
    assert bandwidth(lhat) == 1


def test_permute_symmetric_four_components(four_components, four_components_lhat):
    rcm = Permutation.from_labels([4, 1, 13, 5, 2, 6, 3, 11, 8, 7, 10, 9, 12])
    lhat = permute_symmetric(build_laplacian(four_components), rcm)
    np.testing.assert_array_equal(lhat.to_dense(), four_components_lhat.to_dense())


def test_permute_symmetric_matches_matrix_product():
    g = gen_random_graph(40, 90, seed=11)
    laplacian = build_laplacian(g)
    p = Permutation.from_forward(np.random.default_rng(5).permutation(g.n))
    pm = p.to_matrix()
    expected = (pm @ laplacian.to_csr() @ pm.T).toarray()
    np.testing.assert_array_equal(permute_symmetric(laplacian, p).to_dense(), expected)


def test_permute_symmetric_identity_and_inverse():
    laplacian = build_laplacian(gen_random_graph(30, 45, seed=2))
    p = Permutation.from_forward(np.random.default_rng(9).permutation(30))
    assert permute_symmetric(laplacian, Permutation.identity(30)) == laplacian
    assert permute_symmetric(permute_symmetric(laplacian, p), p.inverted()) == laplacian


def test_permute_symmetric_size_mismatch():
    with pytest.raises(InputError):
        permute_symmetric(build_laplacian(gen_edgeless_graph(3)), Permutation.identity(4))


def test_relabel_commutes_with_laplacian():
    g = gen_random_graph(50, 120, seed=4)
    p = Permutation.from_forward(np.random.default_rng(1).permutation(50))
    assert build_laplacian(relabel(g, p)) == permute_symmetric(build_laplacian(g), p)
    assert relabel(g, p).m == g.m


def test_permutation():
    p = Permutation.from_labels([2, 3, 4, 1])
    assert p.forward.tolist() == [1, 2, 3, 0]
    assert p.inverse.tolist() == [3, 0, 1, 2]
    assert p.labels() == [2, 3, 4, 1]
    assert p.inverted().labels() == [4, 1, 2, 3]
    assert p.n == 4
    with pytest.raises(InputError):
        Permutation.from_labels([1, 1, 2])


def test_bandwidth(path4):
    assert bandwidth(build_laplacian(path4)) == 3
    assert bandwidth(build_laplacian(gen_edgeless_graph(4))) == 0
    assert bandwidth(build_laplacian(graph_from_edges(0, []))) == 0


def test_from_dense_validation():
    with pytest.raises(InputError, match="square"):
        SparseSymMatrix.from_dense(np.zeros((2, 3)))
    with pytest.raises(InputError, match="symmetric"):
        SparseSymMatrix.from_dense(np.array([[0, 1], [0, 0]]))
    m = SparseSymMatrix.from_dense(np.array([[1.0, -1.0], [-1.0, 1.0]]))
    assert m.data.dtype == np.int64
    assert m.entry(0, 1) == -1 and m.entry(1, 1) == 1
