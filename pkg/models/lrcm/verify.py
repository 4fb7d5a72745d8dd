"""
Independent oracles for the L-RCM detector and random graph generators.

None of the oracles share code with the detection path: components_bfs has
its own traversal kernel, the spectral oracle diagonalizes a dense copy of the
Laplacian with cyclic Jacobi rotations and the irreducibility checks work on
the nonzero pattern of the matrix alone.
"""
import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np
from numba import njit
import scipy.sparse as sp
from scipy.sparse import csgraph

from lrcm import constants
from lrcm.core import (INDEX_DTYPE, Permutation, build_laplacian, graph_from_edges,
                       graph_from_networkx, relabel)
from lrcm.detection import Partition
from lrcm.errors import InputError, OracleLimitExceeded

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SpectralReport:
    """Full spectrum of a symmetric matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    zero_multiplicity: int
    tolerance: float
    sweeps: int

    @property
    def algebraic_connectivity(self):
        """Second smallest eigenvalue; 0.0 below two nodes."""
        if len(self.eigenvalues) < 2:
            return 0.0
        return float(self.eigenvalues[1])


@njit(cache=True)
def _components_kernel(n, indptr, indices):
    label = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    count = 0
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = count
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if label[w] < 0:
                    label[w] = count
                    queue[tail] = w
                    tail += 1
        count += 1
    return label, count


def component_labels(g):
    """0-based component id per node, ids numbered in order of smallest member."""
    label, count = _components_kernel(g.n, g.indptr, g.indices)
    return label, int(count)


def components_bfs(g):
    """Breadth-first search connected components as a canonical Partition."""
    label, count = component_labels(g)
    order = np.argsort(label, kind='stable')
    bounds = np.cumsum(np.bincount(label, minlength=count))[:-1]
    return Partition.from_components(np.split(order + 1, bounds) if count else [])


def max_degree(g):
    if g.n == 0:
        return 0
    return int(g.degrees.max())


@njit(cache=True)
def _off_diagonal_norm(a):
    n = a.shape[0]
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                total += a[i, j] * a[i, j]
    return np.sqrt(total)


@njit(cache=True)
def _jacobi_kernel(a, tol, max_sweeps):
    n = a.shape[0]
    v = np.eye(n)
    threshold = tol * _off_diagonal_norm(a)
    sweeps = 0
    while sweeps < max_sweeps and _off_diagonal_norm(a) > threshold:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
        sweeps += 1
    return np.diag(a).copy(), v, sweeps


def jacobi_eigh(a, tol=constants.JACOBI_TOLERANCE, max_sweeps=constants.JACOBI_MAX_SWEEPS):
    """
    Cyclic Jacobi eigensolver for a dense symmetric matrix.
    Sweeps until the off-diagonal Frobenius mass falls below ``tol`` times its
    initial value, or ``max_sweeps`` is reached.
    :return: (eigenvalues ascending, eigenvectors as columns, sweeps)
    """
    work = np.array(a, dtype=np.float64, copy=True)
    if work.shape[0] == 0:
        return np.empty(0), np.empty((0, 0)), 0
    values, vectors, sweeps = _jacobi_kernel(work, tol, max_sweeps)
    if sweeps == max_sweeps:
        logger.warning(f"jacobi stopped after {sweeps} sweeps without reaching tol={tol}")
    order = np.argsort(values, kind='stable')
    return values[order], vectors[:, order], int(sweeps)


def spectral_report(l, tol=constants.ZERO_TOLERANCE, max_dim=constants.SPECTRAL_MAX_DIM,
                    jacobi_tol=constants.JACOBI_TOLERANCE,
                    max_sweeps=constants.JACOBI_MAX_SWEEPS):
    if l.n > max_dim:
        raise OracleLimitExceeded(f"dense spectral oracle is limited to n <= {max_dim}, got {l.n}")
    values, vectors, sweeps = jacobi_eigh(l.to_dense(), jacobi_tol, max_sweeps)
    scale = max(1.0, float(np.abs(values).max())) if len(values) else 1.0
    zeros = int((np.abs(values) < tol * scale).sum())
    logger.debug(f"spectrum of n={l.n}: {zeros} zero eigenvalues after {sweeps} sweeps")
    return SpectralReport(values, vectors, zeros, tol, sweeps)


def zero_multiplicity(l, tol=constants.ZERO_TOLERANCE):
    """Number of eigenvalues with |lambda| < tol * max(1, lambda_max)."""
    return spectral_report(l, tol).zero_multiplicity


def components_nullspace(g, tol=constants.ZERO_TOLERANCE):
    """
    Components read off the zero eigenspace of the Laplacian: in any orthonormal
    basis of it, nodes of one component have identical rows and rows of
    different components lie at least sqrt(2 / n) apart.
    """
    report = spectral_report(build_laplacian(g), tol)
    basis = report.eigenvectors[:, :report.zero_multiplicity]
    radius = 0.5 * np.sqrt(2.0 / max(g.n, 1))
    unassigned = np.ones(g.n, dtype=bool)
    components = []
    for i in range(g.n):
        if not unassigned[i]:
            continue
        close = np.linalg.norm(basis - basis[i], axis=1) < radius
        members = np.flatnonzero(close & unassigned)
        unassigned[members] = False
        components.append(members + 1)
    return Partition.from_components(components)


def _pattern(m):
    """Off-diagonal nonzero pattern as a dense boolean matrix."""
    pattern = m.to_dense() != 0
    np.fill_diagonal(pattern, False)
    return pattern


def is_irreducible_bruteforce(m, max_dim=constants.BRUTEFORCE_MAX_DIM, chunk=1 << 14):
    """
    True iff for every nonempty proper subset S of the indices some nonzero
    entry m_ij has i in S and j outside S. A 1x1 matrix is irreducible iff it is
    nonzero.
    """
    n = m.n
    if n == 0:
        raise InputError("irreducibility is not defined for an empty matrix")
    if n > max_dim:
        raise OracleLimitExceeded(f"brute force is limited to n <= {max_dim}, got {n}")
    if n == 1:
        return m.entry(0, 0) != 0
    pattern = _pattern(m).astype(np.int64)
    bits = np.arange(n, dtype=np.int64)
    for start in range(1, (1 << n) - 1, chunk):
        masks = np.arange(start, min(start + chunk, (1 << n) - 1), dtype=np.int64)
        inside = (masks[:, None] >> bits) & 1
        crossing = ((inside @ pattern) * (1 - inside)).sum(axis=1)
        if (crossing == 0).any():
            return False
    return True


def is_irreducible_reachability(m):
    """Connectivity of the graph whose edges are the off-diagonal nonzeros of ``m``."""
    if m.n == 0:
        raise InputError("irreducibility is not defined for an empty matrix")
    if m.n == 1:
        return m.entry(0, 0) != 0
    count, _ = csgraph.connected_components(sp.csr_matrix(_pattern(m)), directed=False)
    return count == 1


def _spanning_tree(size, rng):
    """Uniform random labelled tree on 0..size-1 as an (size - 1, 2) edge array."""
    if size < 2:
        return np.empty((0, 2), dtype=INDEX_DTYPE)
    if size == 2:
        return np.array([[0, 1]], dtype=INDEX_DTYPE)
    tree = nx.from_prufer_sequence(rng.integers(0, size, size - 2).tolist())
    return np.asarray(list(tree.edges()), dtype=INDEX_DTYPE)


def _extra_edges(size, tree, p, rng):
    """Every non-tree pair of a block independently with probability ``p``."""
    nontree = size * (size - 1) // 2 - len(tree)
    if p <= 0 or nontree <= 0:
        return np.empty((0, 2), dtype=INDEX_DTYPE)
    tree_keys = np.minimum(tree[:, 0], tree[:, 1]) * size + np.maximum(tree[:, 0], tree[:, 1])
    if p > 0.25:
        lo, hi = np.triu_indices(size, k=1)
        keys = lo * size + hi
        keys = keys[~np.isin(keys, tree_keys) & (rng.random(len(keys)) < p)]
        return np.column_stack((keys // size, keys % size)).astype(INDEX_DTYPE)

    # binomial count, then a uniform subset of that size by rejection
    target = int(rng.binomial(nontree, p))
    chosen = np.empty(0, dtype=INDEX_DTYPE)
    while len(chosen) < target:
        draw = rng.integers(0, size, (2 * (target - len(chosen)) + 8, 2))
        draw = draw[draw[:, 0] != draw[:, 1]]
        keys = np.minimum(draw[:, 0], draw[:, 1]) * size + np.maximum(draw[:, 0], draw[:, 1])
        keys = keys[~np.isin(keys, tree_keys)]
        chosen = np.union1d(chosen, keys)
    if len(chosen) > target:
        chosen = rng.choice(chosen, target, replace=False)
    return np.column_stack((chosen // size, chosen % size)).astype(INDEX_DTYPE)


def gen_block_graph(k, size, extra_edge_prob=0.0, seed=None):
    """
    k components of ``size`` nodes each: a uniform random spanning tree per
    block plus every other pair of the block with probability ``extra_edge_prob``.
    All k * size labels are then shuffled uniformly.
    """
    if k < 1 or size < 1:
        raise InputError(f"need k >= 1 and size >= 1, got k={k}, size={size}")
    if not 0.0 <= extra_edge_prob <= 1.0:
        raise InputError(f"extra_edge_prob must lie in [0, 1], got {extra_edge_prob}")
    rng = np.random.default_rng(seed)
    blocks = []
    for b in range(k):
        tree = _spanning_tree(size, rng)
        extra = _extra_edges(size, tree, extra_edge_prob, rng)
        blocks.append(np.concatenate((tree, extra)) + b * size)
    n = k * size
    shuffle = rng.permutation(n)
    edges = shuffle[np.concatenate(blocks)]
    return graph_from_edges(n, edges, index_base=0)


def gen_random_graph(n, m, seed=None):
    """Uniform G(n, m) graph; m is capped at n(n-1)/2."""
    return graph_from_networkx(nx.gnm_random_graph(n, m, seed=seed))


def gen_path_graph(n):
    return graph_from_networkx(nx.path_graph(n))


def gen_star_graph(n):
    """Star on n nodes with node 1 at the centre."""
    if n < 1:
        return gen_edgeless_graph(0)
    return graph_from_networkx(nx.star_graph(n - 1))


def gen_complete_graph(n):
    return graph_from_networkx(nx.complete_graph(n))


def gen_edgeless_graph(n):
    return graph_from_networkx(nx.empty_graph(n))


def shuffle_labels(g, seed=None):
    rng = np.random.default_rng(seed)
    return relabel(g, Permutation.from_forward(rng.permutation(g.n)))
