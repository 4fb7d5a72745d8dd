"""
Graph and sparse symmetric matrix types used by the L-RCM pipeline.

Both types use a compressed sparse row (CSR) layout over 0-based numpy arrays
with sorted column indices. Node labels are 1-based at the API boundary.
"""
import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np
import scipy.sparse as sp
from numba import njit

from lrcm.errors import InputError

logger = logging.getLogger(__name__)

INDEX_DTYPE = np.int64


def _frozen(array, dtype):
    array = np.ascontiguousarray(array, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph, adjacency stored once per direction."""

    n: int
    indptr: np.ndarray
    indices: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'indptr', _frozen(self.indptr, INDEX_DTYPE))
        object.__setattr__(self, 'indices', _frozen(self.indices, INDEX_DTYPE))
        if len(self.indptr) != self.n + 1:
            raise InputError(f"indptr has length {len(self.indptr)}, expected {self.n + 1}")

    @property
    def m(self):
        return int(self.indptr[-1]) // 2

    @property
    def degrees(self):
        return np.diff(self.indptr)

    def neighbors(self, label):
        """Sorted 1-based neighbours of the 1-based node ``label``."""
        i = label - 1
        return (self.indices[self.indptr[i]:self.indptr[i + 1]] + 1).tolist()

    def edges(self):
        """1-based ``(u, v)`` pairs with ``u < v``, in row-major order."""
        rows = np.repeat(np.arange(self.n, dtype=INDEX_DTYPE), self.degrees)
        upper = rows < self.indices
        return list(zip((rows[upper] + 1).tolist(), (self.indices[upper] + 1).tolist()))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True, eq=False)
class SparseSymMatrix:
    """Symmetric sparse matrix in CSR form with an explicitly stored diagonal.

    Entry positions are 0-based, as in numpy.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'indptr', _frozen(self.indptr, INDEX_DTYPE))
        object.__setattr__(self, 'indices', _frozen(self.indices, INDEX_DTYPE))
        data = np.asarray(self.data)
        dtype = INDEX_DTYPE if np.issubdtype(data.dtype, np.integer) else np.float64
        object.__setattr__(self, 'data', _frozen(data, dtype))

    @classmethod
    def from_dense(cls, array):
        """Keeps every diagonal entry (even zero) and every nonzero off-diagonal."""
        a = np.asarray(array)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InputError(f"expected a square matrix, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise InputError("matrix is not symmetric")
        if np.issubdtype(a.dtype, np.floating) and np.array_equal(a, np.round(a)):
            a = a.astype(INDEX_DTYPE)
        n = a.shape[0]
        keep = (a != 0) | np.eye(n, dtype=bool)
        rows, cols = np.nonzero(keep)
        indptr = np.concatenate(([0], np.cumsum(np.bincount(rows, minlength=n))))
        return cls(n, indptr, cols, a[rows, cols])

    @property
    def nnz(self):
        return int(self.indptr[-1])

    def entry(self, i, j):
        start, end = self.indptr[i], self.indptr[i + 1]
        k = start + np.searchsorted(self.indices[start:end], j)
        if k < end and self.indices[k] == j:
            return self.data[k].item()
        return 0

    def diagonal(self):
        return np.array([self.entry(i, i) for i in range(self.n)], dtype=self.data.dtype)

    def row_sums(self):
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        return np.bincount(rows, weights=self.data, minlength=self.n).astype(self.data.dtype)

    def to_csr(self):
        return sp.csr_matrix((self.data, self.indices, self.indptr), shape=(self.n, self.n))

    def to_dense(self):
        return self.to_csr().toarray()

    def is_symmetric(self):
        csr = self.to_csr()
        return (csr != csr.T).nnz == 0

    def __eq__(self, other):
        if not isinstance(other, SparseSymMatrix):
            return NotImplemented
        return (self.n == other.n and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.data, other.data))

    def __repr__(self):
        return f"SparseSymMatrix(n={self.n}, nnz={self.nnz})"


@dataclass(frozen=True, eq=False)
class Permutation:
    """``forward[new] = old`` and ``inverse[old] = new``, both 0-based."""

    forward: np.ndarray
    inverse: np.ndarray

    @classmethod
    def from_forward(cls, forward):
        forward = np.asarray(forward, dtype=INDEX_DTYPE)
        n = len(forward)
        if not np.array_equal(np.sort(forward), np.arange(n)):
            raise InputError("permutation vector is not a bijection on 0..n-1")
        inverse = np.empty(n, dtype=INDEX_DTYPE)
        inverse[forward] = np.arange(n, dtype=INDEX_DTYPE)
        return cls(_frozen(forward, INDEX_DTYPE), _frozen(inverse, INDEX_DTYPE))

    @classmethod
    def from_labels(cls, labels):
        """From a 1-based vector such as MATLAB's ``symrcm`` output."""
        return cls.from_forward(np.asarray(labels, dtype=INDEX_DTYPE) - 1)

    @classmethod
    def identity(cls, n):
        return cls.from_forward(np.arange(n, dtype=INDEX_DTYPE))

    @property
    def n(self):
        return len(self.forward)

    def labels(self):
        return (self.forward + 1).tolist()

    def inverted(self):
        return Permutation(self.inverse, self.forward)

    def to_matrix(self):
        """P with ``p[new, old] = 1``, so that ``P @ L @ P.T`` is the permuted matrix."""
        n = self.n
        return sp.csr_matrix((np.ones(n, dtype=INDEX_DTYPE), (np.arange(n), self.forward)),
                             shape=(n, n))

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return np.array_equal(self.forward, other.forward)

    def __repr__(self):
        return f"Permutation({self.labels()})"


def graph_from_edges(n, edges, sanitize=False, index_base=1):
    """
    Builds a simple undirected graph from an edge list.
    :param n: node count
    :param edges: pairs of node labels, numbered from ``index_base``
    :param sanitize: drop self-loops and merge duplicate edges instead of failing
    :return: Graph
    """
    if n < 0:
        raise InputError(f"node count must be non-negative, got {n}")
    pairs = np.asarray(edges, dtype=INDEX_DTYPE).reshape(-1, 2) - index_base

    out_of_range = (pairs < 0) | (pairs >= n)
    if out_of_range.any():
        bad = pairs[out_of_range.any(axis=1)][0] + index_base
        raise InputError(f"edge ({bad[0]}, {bad[1]}) has a label outside "
                         f"{index_base}..{n - 1 + index_base}")

    loops = pairs[:, 0] == pairs[:, 1]
    if loops.any():
        if not sanitize:
            raise InputError(f"self-loop at node {pairs[loops][0, 0] + index_base}")
        logger.debug(f"dropping {int(loops.sum())} self-loops")
        pairs = pairs[~loops]

    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    keys, first = np.unique(lo * max(n, 1) + hi, return_index=True)
    if len(keys) != len(pairs):
        if not sanitize:
            seen = np.zeros(len(pairs), dtype=bool)
            seen[first] = True
            dup = np.flatnonzero(~seen)[0]
            raise InputError(f"duplicate edge ({lo[dup] + index_base}, {hi[dup] + index_base})")
        logger.debug(f"merging {len(pairs) - len(keys)} duplicate edges")
        lo, hi = lo[first], hi[first]

    rows = np.concatenate((lo, hi))
    cols = np.concatenate((hi, lo))
    order = np.lexsort((cols, rows))
    indptr = np.concatenate(([0], np.cumsum(np.bincount(rows, minlength=n))))
    return Graph(n, indptr, cols[order])


def graph_from_networkx(nxg):
    """Nodes are numbered 1..n in sorted order of their networkx labels."""
    nodes = sorted(nxg.nodes())
    label = {node: i + 1 for i, node in enumerate(nodes)}
    edges = [(label[u], label[v]) for u, v in nxg.edges()]
    return graph_from_edges(len(nodes), edges)


def graph_to_networkx(g):
    nxg = nx.Graph()
    nxg.add_nodes_from(range(1, g.n + 1))
    nxg.add_edges_from(g.edges())
    return nxg


@njit(cache=True)
def _laplacian_kernel(n, indptr, indices):
    nnz = indptr[n] + n
    out_ptr = np.empty(n + 1, dtype=np.int64)
    out_idx = np.empty(nnz, dtype=np.int64)
    out_val = np.empty(nnz, dtype=np.int64)
    pos = 0
    out_ptr[0] = 0
    for i in range(n):
        degree = indptr[i + 1] - indptr[i]
        placed = False
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            if not placed and j > i:
                out_idx[pos] = i
                out_val[pos] = degree
                pos += 1
                placed = True
            out_idx[pos] = j
            out_val[pos] = -1
            pos += 1
        if not placed:
            out_idx[pos] = i
            out_val[pos] = degree
            pos += 1
        out_ptr[i + 1] = pos
    return out_ptr, out_idx, out_val


def build_laplacian(g):
    """L = D - A with integer entries; the diagonal is stored even where it is zero."""
    indptr, indices, data = _laplacian_kernel(g.n, g.indptr, g.indices)
    return SparseSymMatrix(g.n, indptr, indices, data)


@njit(cache=True)
def _permute_kernel(n, indptr, indices, data, forward, inverse, out_ptr, out_idx, out_val):
    for i in range(n):
        old = forward[i]
        start = indptr[old]
        length = indptr[old + 1] - start
        base = out_ptr[i]
        cols = np.empty(length, dtype=np.int64)
        for t in range(length):
            cols[t] = inverse[indices[start + t]]
        order = np.argsort(cols)
        for t in range(length):
            out_idx[base + t] = cols[order[t]]
            out_val[base + t] = data[start + order[t]]


def _permute_csr(n, indptr, indices, data, p):
    out_ptr = np.concatenate(([0], np.cumsum(np.diff(indptr)[p.forward]))).astype(INDEX_DTYPE)
    out_idx = np.empty(out_ptr[-1], dtype=INDEX_DTYPE)
    out_val = np.empty(out_ptr[-1], dtype=data.dtype)
    _permute_kernel(n, indptr, indices, data, p.forward, p.inverse, out_ptr, out_idx, out_val)
    return out_ptr, out_idx, out_val


def permute_symmetric(m, p):
    """
    Computes P M P^T: entry (i, j) of the result is entry (forward[i], forward[j]) of ``m``.
    The cost is proportional to nnz(m).
    """
    if p.n != m.n:
        raise InputError(f"permutation of size {p.n} does not match matrix of size {m.n}")
    indptr, indices, data = _permute_csr(m.n, m.indptr, m.indices, m.data, p)
    return SparseSymMatrix(m.n, indptr, indices, data)


def relabel(g, p):
    """The graph in which new node i is old node forward[i]."""
    if p.n != g.n:
        raise InputError(f"permutation of size {p.n} does not match graph of size {g.n}")
    ones = np.ones(len(g.indices), dtype=INDEX_DTYPE)
    indptr, indices, _ = _permute_csr(g.n, g.indptr, g.indices, ones, p)
    return Graph(g.n, indptr, indices)


def bandwidth(m):
    """max |i - j| over the nonzero entries; 0 for diagonal or empty matrices."""
    if m.nnz == 0:
        return 0
    rows = np.repeat(np.arange(m.n, dtype=INDEX_DTYPE), np.diff(m.indptr))
    nonzero = m.data != 0
    if not nonzero.any():
        return 0
    return int(np.abs(rows[nonzero] - m.indices[nonzero]).max())
