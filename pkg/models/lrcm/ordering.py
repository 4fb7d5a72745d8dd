"""
Cuthill-McKee and reverse Cuthill-McKee orderings.

Each component is started from a pseudoperipheral vertex found by iterated
level structures. Every tie is broken by the lowest original
label, so orderings are deterministic.
"""
import logging
from dataclasses import dataclass
from typing import List

import numpy as np
from numba import njit

from lrcm.core import INDEX_DTYPE, Permutation
from lrcm.errors import InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LevelStructure:
    root: int
    levels: List[List[int]]

    @property
    def eccentricity(self):
        return len(self.levels) - 1

    def level_of(self):
        """Maps each 1-based node of the component to its level."""
        return {node: depth for depth, level in enumerate(self.levels) for node in level}


@njit(cache=True)
def _level_kernel(indptr, indices, root, mark, stamp, order, level_ptr):
    # Nodes of root's component land in order[:size], level l in
    # order[level_ptr[l]:level_ptr[l + 1]].
    mark[root] = stamp
    order[0] = root
    level_ptr[0] = 0
    head = 0
    tail = 1
    n_levels = 0
    while head < tail:
        level_end = tail
        while head < level_end:
            v = order[head]
            head += 1
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if mark[w] != stamp:
                    mark[w] = stamp
                    order[tail] = w
                    tail += 1
        n_levels += 1
        level_ptr[n_levels] = level_end
    return tail, n_levels


@njit(cache=True)
def _min_degree(nodes, degree):
    best = nodes[0]
    for v in nodes[1:]:
        if degree[v] < degree[best] or (degree[v] == degree[best] and v < best):
            best = v
    return best


@njit(cache=True)
def _pseudoperipheral_kernel(indptr, indices, degree, start, mark, stamp, order, level_ptr):
    _, n_levels = _level_kernel(indptr, indices, start, mark, stamp, order, level_ptr)
    stamp += 1
    growing = True
    candidate = start
    while growing:
        last = order[level_ptr[n_levels - 1]:level_ptr[n_levels]]
        candidate = _min_degree(last, degree)
        _, candidate_levels = _level_kernel(indptr, indices, candidate, mark, stamp, order, level_ptr)
        stamp += 1
        growing = candidate_levels > n_levels
        n_levels = max(n_levels, candidate_levels)
    return candidate, stamp


@njit(cache=True)
def _cuthill_mckee_kernel(n, indptr, indices, degree):
    perm = np.empty(n, dtype=np.int64)
    visited = np.zeros(n, dtype=np.bool_)
    mark = np.zeros(n, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    level_ptr = np.empty(n + 1, dtype=np.int64)
    pending = np.empty(n, dtype=np.int64)
    stamp = 1
    pos = 0
    lowest = 0
    while pos < n:
        while visited[lowest]:
            lowest += 1
        size, _ = _level_kernel(indptr, indices, lowest, mark, stamp, order, level_ptr)
        stamp += 1
        seed = _min_degree(order[:size], degree)
        root, stamp = _pseudoperipheral_kernel(indptr, indices, degree, seed,
                                               mark, stamp, order, level_ptr)
        visited[root] = True
        perm[pos] = root
        head = pos
        pos += 1
        while head < pos:
            v = perm[head]
            head += 1
            count = 0
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if not visited[w]:
                    pending[count] = w
                    count += 1
            # pending is in label order; a stable sort by degree keeps it for ties
            by_degree = np.argsort(degree[pending[:count]], kind='mergesort')
            for t in range(count):
                w = pending[by_degree[t]]
                visited[w] = True
                perm[pos] = w
                pos += 1
    return perm


def _check_node(g, label):
    if not 1 <= label <= g.n:
        raise InputError(f"node {label} is outside 1..{g.n}")


def level_structure(g, root):
    """Breadth-first level structure of ``root``'s component (1-based labels)."""
    _check_node(g, root)
    mark = np.zeros(g.n, dtype=INDEX_DTYPE)
    order = np.empty(g.n, dtype=INDEX_DTYPE)
    level_ptr = np.empty(g.n + 1, dtype=INDEX_DTYPE)
    _, n_levels = _level_kernel(g.indptr, g.indices, root - 1, mark, 1, order, level_ptr)
    levels = [(order[level_ptr[d]:level_ptr[d + 1]] + 1).tolist() for d in range(n_levels)]
    return LevelStructure(root, levels)


def pseudoperipheral(g, start):
    """
    Walks to a vertex of locally maximal eccentricity in ``start``'s component.
    From the current vertex the minimum-degree node of the last level is tried;
    the walk continues while the eccentricity grows and returns the last candidate.
    """
    _check_node(g, start)
    mark = np.zeros(g.n, dtype=INDEX_DTYPE)
    order = np.empty(g.n, dtype=INDEX_DTYPE)
    level_ptr = np.empty(g.n + 1, dtype=INDEX_DTYPE)
    node, _ = _pseudoperipheral_kernel(g.indptr, g.indices, g.degrees, start - 1,
                                       mark, 1, order, level_ptr)
    return int(node) + 1


def cuthill_mckee(g):
    """
    Cuthill-McKee ordering of all components.
    Components are taken in order of their lowest unvisited label; neighbours are
    queued by increasing degree, then increasing label.
    """
    forward = _cuthill_mckee_kernel(g.n, g.indptr, g.indices, g.degrees)
    return Permutation.from_forward(forward)


def rcm_order(g):
    """The Cuthill-McKee sequence reversed once as a whole."""
    perm = Permutation.from_forward(cuthill_mckee(g).forward[::-1])
    logger.debug(f"rcm ordering of {g}")
    return perm


def has_root_property(g, p):
    """
    True iff, under ``p``, every node other than the highest-indexed node of its
    component has a neighbour with a higher index. Every RCM ordering has it.
    """
    if p.n != g.n:
        raise InputError(f"permutation of size {p.n} does not match graph of size {g.n}")
    if g.n == 0:
        return True
    rows = np.repeat(np.arange(g.n, dtype=INDEX_DTYPE), g.degrees)
    new_row = p.inverse[rows]
    new_col = p.inverse[g.indices]
    higher = np.zeros(g.n, dtype=bool)
    higher[new_row[new_col > new_row]] = True
    # the nodes lacking a higher neighbour must be exactly the component maxima
    component_max = _component_maxima(g, p)
    return bool(np.array_equal(np.flatnonzero(~higher), component_max))


def _component_maxima(g, p):
    mark = np.zeros(g.n, dtype=INDEX_DTYPE)
    order = np.empty(g.n, dtype=INDEX_DTYPE)
    level_ptr = np.empty(g.n + 1, dtype=INDEX_DTYPE)
    maxima = []
    seen = np.zeros(g.n, dtype=bool)
    for v in range(g.n):
        if seen[v]:
            continue
        size, _ = _level_kernel(g.indptr, g.indices, v, mark, v + 1, order, level_ptr)
        members = order[:size]
        seen[members] = True
        maxima.append(p.inverse[members].max())
    return np.sort(np.asarray(maxima, dtype=INDEX_DTYPE))
