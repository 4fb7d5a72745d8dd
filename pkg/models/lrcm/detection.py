"""
Connected component detection on an RCM-ordered Laplacian.

Let L^ = P L P^T with P from an RCM ordering and let s_i be the sum of row i of
L^ up to and including the diagonal. s_i counts the neighbours of i with a
higher index, so it vanishes exactly at the highest-indexed node (the root) of
every component. The zeros of s therefore close the diagonal blocks of L^:

    L  = laplacian(A)
    p  = rcm(L)
    L^ = L(p, p)
    s  = rowsum(tril(L^))
    cut = find(s == 0)

All arithmetic is exact integer arithmetic.
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numba import njit

from lrcm.core import INDEX_DTYPE, build_laplacian, permute_symmetric
from lrcm.errors import ContractViolation
from lrcm.ordering import rcm_order

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RowSums:
    """s[i] = sum of row i of L^ over columns j <= i (0-based array)."""

    s: np.ndarray

    @property
    def n(self):
        return len(self.s)

    def tolist(self):
        return self.s.tolist()

    def __eq__(self, other):
        if not isinstance(other, RowSums):
            return NotImplemented
        return np.array_equal(self.s, other.s)


@dataclass(frozen=True, eq=False)
class CutVector:
    """
    Strictly increasing 1-based root positions r_1 < ... < r_k = n.
    Block b covers RCM positions r_{b-1} + 1 .. r_b, i.e. the 0-based slice
    ``[cuts[b - 1]:cuts[b]]`` with an implicit leading 0.
    """

    cuts: np.ndarray

    @property
    def k(self):
        return len(self.cuts)

    def bounds(self):
        """0-based half-open ``(start, stop)`` of every block."""
        starts = np.concatenate(([0], self.cuts[:-1]))
        return list(zip(starts.tolist(), self.cuts.tolist()))

    def sizes(self):
        return np.diff(np.concatenate(([0], self.cuts))).tolist()

    def tolist(self):
        return self.cuts.tolist()

    def __eq__(self, other):
        if not isinstance(other, CutVector):
            return NotImplemented
        return np.array_equal(self.cuts, other.cuts)

    def __repr__(self):
        return f"CutVector({self.tolist()})"


@dataclass(frozen=True)
class Partition:
    """Components as tuples of 1-based labels, members ascending, ordered by smallest member."""

    components: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_components(cls, components):
        canonical = sorted(tuple(sorted(int(v) for v in c)) for c in components)
        return cls(tuple(canonical))

    @classmethod
    def from_cuts(cls, permutation, cuts):
        labels = permutation.forward + 1
        return cls.from_components(labels[start:stop] for start, stop in cuts.bounds())

    @property
    def k(self):
        return len(self.components)

    def sizes(self):
        return [len(c) for c in self.components]

    def as_sets(self):
        return {frozenset(c) for c in self.components}

    def tolist(self):
        return [list(c) for c in self.components]


@dataclass(frozen=True)
class DetectionResult:
    partition: Partition
    permutation: object
    cuts: CutVector
    row_sums: RowSums = None


@njit(cache=True)
def _lower_row_sums_kernel(n, indptr, indices, data):
    s = np.zeros(n, dtype=np.int64)
    for i in range(n):
        acc = 0
        for k in range(indptr[i], indptr[i + 1]):
            if indices[k] > i:
                break
            acc += data[k]
        s[i] = acc
    return s


def _integer_data(lhat):
    data = lhat.data
    if np.issubdtype(data.dtype, np.integer):
        return data
    if not np.array_equal(data, np.round(data)):
        raise ContractViolation("matrix has non-integer entries: input is not a graph Laplacian")
    return data.astype(INDEX_DTYPE)


def lower_tri_row_sums(lhat):
    """s_i = sum_{j <= i} l^_ij in O(nnz); relies on sorted column indices."""
    return RowSums(_lower_row_sums_kernel(lhat.n, lhat.indptr, lhat.indices, _integer_data(lhat)))


def find_cuts(s):
    """
    Positions (1-based) of the zeros of s. Every valid input has s_n = 0 and s >= 0;
    anything else is not a Laplacian ordered by RCM.
    """
    values = s.s
    if len(values) == 0:
        return CutVector(np.empty(0, dtype=INDEX_DTYPE))
    if values[-1] != 0:
        raise ContractViolation(f"s[n] = {values[-1]}, expected 0: input is not an "
                                f"RCM-ordered Laplacian")
    if (values < 0).any():
        i = int(np.flatnonzero(values < 0)[0])
        raise ContractViolation(f"s[{i + 1}] = {values[i]} is negative: input is not a Laplacian")
    return CutVector(np.flatnonzero(values == 0).astype(INDEX_DTYPE) + 1)


def detect(g):
    """
    L-RCM: Laplacian, RCM ordering, symmetric permutation, lower row sums, cut.
    :return: DetectionResult, row sums included
    """
    laplacian = build_laplacian(g)
    permutation = rcm_order(g)
    row_sums = lower_tri_row_sums(permute_symmetric(laplacian, permutation))
    cuts = find_cuts(row_sums)
    partition = Partition.from_cuts(permutation, cuts)
    logger.debug(f"{g}: {partition.k} components, cut={cuts.tolist()}")
    return DetectionResult(partition, permutation, cuts, row_sums)


def components_lrcm(g):
    """:return: (Partition, Permutation, CutVector) of detect(g)"""
    result = detect(g)
    return result.partition, result.permutation, result.cuts


@njit(cache=True)
def _indicator_cuts_kernel(n, indptr, indices, data):
    # v = L^ e_p restricted to the trailing block that starts at `start`;
    # `nonzero` counts its nonzero entries.
    cuts = np.empty(n, dtype=np.int64)
    v = np.zeros(n, dtype=np.int64)
    k = 0
    nonzero = 0
    start = 0
    for p in range(n):
        for t in range(indptr[p], indptr[p + 1]):
            j = indices[t]
            if j < start:
                continue
            old = v[j]
            new = old + data[t]
            if old == 0 and new != 0:
                nonzero += 1
            elif old != 0 and new == 0:
                nonzero -= 1
            v[j] = new
        if nonzero == 0:
            cuts[k] = p + 1
            k += 1
            start = p + 1
    return cuts[:k]


def detect_blocks_evec(lhat):
    """
    Block search with indicator vectors: the first block ends at the smallest p
    with L^ e_p = 0 (e_p = ones in the first p entries), then the search restarts
    on the trailing submatrix. Agrees with find_cuts(lower_tri_row_sums(lhat)).
    """
    cuts = _indicator_cuts_kernel(lhat.n, lhat.indptr, lhat.indices, _integer_data(lhat))
    if lhat.n and (len(cuts) == 0 or cuts[-1] != lhat.n):
        raise ContractViolation("the trailing block never closes: input is not a Laplacian")
    return CutVector(cuts.astype(INDEX_DTYPE))


def is_irreducible_lrcm(lhat):
    """L^ is irreducible iff the only zero of s is at position n."""
    return find_cuts(lower_tri_row_sums(lhat)).k == 1
