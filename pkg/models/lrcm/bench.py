"""
Desk-scale benchmarks of the L-RCM pipeline.

Two experiments are provided: a per-phase breakdown at (roughly) constant n with
2^p components of equal size, and the total time for two components while n
grows at constant density nnz(A) / n^2. Every instance is checked against the
BFS oracle before its timings are kept.
"""
import json
import logging
from collections import namedtuple
from dataclasses import asdict, dataclass, replace
from time import perf_counter_ns

import numpy as np
import pandas as pd

from lrcm import constants
from lrcm.core import build_laplacian, permute_symmetric
from lrcm.detection import Partition, find_cuts, lower_tri_row_sums
from lrcm.errors import BenchConfigError, DegenerateFitError, VerificationError
from lrcm.ordering import rcm_order
from lrcm.verify import components_bfs, gen_block_graph, max_degree

logger = logging.getLogger(__name__)

PowerLawFit = namedtuple("PowerLawFit", "coefficient exponent residual")

NS_PER_MS = 1e6


@dataclass(frozen=True)
class PhaseBreakdown:
    """Mean wall-clock time per phase in milliseconds for one block count."""

    p: int
    k: int
    n: int
    m: int
    q_max: int
    t_laplacian: float
    t_rcm: float
    t_permute: float
    t_sumfind: float
    reps: int
    normalized: dict = None

    @property
    def t_total(self):
        return self.t_laplacian + self.t_rcm + self.t_permute + self.t_sumfind

    def to_row(self):
        return {"p": self.p, "k": self.k, "n": self.n, "m": self.m, "qmax": self.q_max,
                "t_laplacian_ms": self.t_laplacian, "t_rcm_ms": self.t_rcm,
                "t_permute_ms": self.t_permute, "t_sumfind_ms": self.t_sumfind,
                "t_total_ms": self.t_total}


@dataclass(frozen=True)
class ScalingPoint:
    """Mean total pipeline time in milliseconds for one n."""

    n: int
    m: int
    sparsity: float
    reps: int
    t_total: float

    def to_row(self):
        return {"n": self.n, "m": self.m, "sparsity": self.sparsity, "reps": self.reps,
                "t_total_ms": self.t_total}


def _timed_pipeline(g):
    """One L-RCM run; phase durations in nanoseconds plus the recovered partition."""
    lap_start_t = perf_counter_ns()
    laplacian = build_laplacian(g)
    lap_end_t = perf_counter_ns()
    permutation = rcm_order(g)
    rcm_end_t = perf_counter_ns()
    lhat = permute_symmetric(laplacian, permutation)
    permute_end_t = perf_counter_ns()
    cuts = find_cuts(lower_tri_row_sums(lhat))
    sumfind_end_t = perf_counter_ns()
    phases = np.array([lap_end_t - lap_start_t, rcm_end_t - lap_end_t,
                       permute_end_t - rcm_end_t, sumfind_end_t - permute_end_t],
                      dtype=np.float64)
    return phases, Partition.from_cuts(permutation, cuts)


def _verified_warmup(g):
    """Untimed run that also compiles the kernels; refuses to time a wrong answer."""
    _, partition = _timed_pipeline(g)
    expected = components_bfs(g)
    if partition != expected:
        raise VerificationError(f"L-RCM found {partition.k} components on {g}, "
                                f"BFS found {expected.k}")


def _mean_phases_ms(g, reps):
    _verified_warmup(g)
    total = np.zeros(4, dtype=np.float64)
    for _ in range(reps):
        phases, _ = _timed_pipeline(g)
        total += phases
    return total / reps / NS_PER_MS


def _block_edge_prob(size, edge_factor):
    """Extra-edge probability that brings a block to about edge_factor * size edges."""
    nontree = size * (size - 1) // 2 - (size - 1)
    if nontree <= 0:
        return 0.0
    extra = edge_factor * size - (size - 1)
    return float(min(1.0, max(0.0, extra / nontree)))


def measure_blocks(p, n_target, reps, seed=None, edge_factor=2.0):
    k = 2 ** p
    size = n_target // k
    if size < 1:
        raise BenchConfigError(f"p={p} gives components of size {n_target}/{k} < 1")
    g = gen_block_graph(k, size, _block_edge_prob(size, edge_factor), seed)
    t_laplacian, t_rcm, t_permute, t_sumfind = _mean_phases_ms(g, reps).tolist()
    row = PhaseBreakdown(p, k, g.n, g.m, max_degree(g), t_laplacian, t_rcm, t_permute,
                         t_sumfind, reps)
    logger.info(f"\t\tp={p:<3} k={k:<6} n={g.n:<7} m={g.m:<8} total={row.t_total:.3f} ms")
    return row


def run_block_experiment(n_target, p_range, reps, seed=None, edge_factor=2.0, normalize_p=None):
    """
    Per-phase cost for k = 2^p components of size floor(n_target / 2^p) each.
    :param edge_factor: target edges per node inside a block
    :param normalize_p: if set, every row also carries its phase times divided by
        the total time at this block count
    :return: list of PhaseBreakdown, one per p
    """
    if reps < 1:
        raise BenchConfigError(f"reps must be >= 1, got {reps}")
    p_range = list(p_range)
    children = np.random.SeedSequence(seed).spawn(len(p_range) + 1)
    rows = [measure_blocks(p, n_target, reps, child, edge_factor)
            for p, child in zip(p_range, children)]
    if normalize_p is None:
        return rows
    reference = next((row for row in rows if row.p == normalize_p), None)
    if reference is None:
        reference = measure_blocks(normalize_p, n_target, reps, children[-1], edge_factor)
    return [replace(row, normalized=shares)
            for row, shares in zip(rows, normalize_breakdowns(rows, reference))]


def normalize_breakdowns(rows, reference):
    """Every phase time divided by the total time of ``reference``."""
    total = reference.t_total
    if total <= 0:
        raise BenchConfigError("reference run has zero total time")
    return [{"p": row.p, "k": row.k,
             "laplacian": row.t_laplacian / total, "rcm": row.t_rcm / total,
             "permute": row.t_permute / total, "sumfind": row.t_sumfind / total,
             "total": row.t_total / total} for row in rows]


def min_sparsity(n):
    """Lowest nnz(A) / n^2 at which two equal components of n nodes can be connected."""
    size = n // 2
    return (size - 1) / (size * size)


def _scaling_edge_prob(size, sparsity):
    """Per-block extra-edge probability so that 2m / n^2 matches the sparsity."""
    n = 2 * size
    block_edges = sparsity * size * size
    tree = size - 1
    nontree = size * (size - 1) // 2 - tree
    if block_edges < tree - 1e-9:
        raise BenchConfigError(f"sparsity {sparsity} gives {block_edges:.1f} edges per component "
                               f"of size {size}; a spanning tree needs {tree}")
    if block_edges - tree > nontree:
        raise BenchConfigError(f"sparsity {sparsity} exceeds a complete graph at n={n}")
    return max(0.0, block_edges - tree) / nontree if nontree else 0.0


def run_scaling_experiment(n_list, sparsity, reps, seed=None):
    """
    Mean total time for two equal components while n grows at constant
    nnz(A) / n^2. Odd n is rounded down to an even node count.
    """
    if reps < 3:
        raise BenchConfigError(f"scaling points average over at least 3 runs, got reps={reps}")
    n_list = list(n_list)
    for n in n_list:
        if n < 4:
            raise BenchConfigError(f"n must be >= 4, got {n}")
    probs = [_scaling_edge_prob(n // 2, sparsity) for n in n_list]

    points = []
    for n, prob, child in zip(n_list, probs, np.random.SeedSequence(seed).spawn(len(n_list))):
        g = gen_block_graph(2, n // 2, prob, child)
        t_total = float(_mean_phases_ms(g, reps).sum())
        points.append(ScalingPoint(g.n, g.m, sparsity, reps, t_total))
        logger.info(f"\t\t{'n=' + str(g.n):<12}{'m=' + str(g.m):<14}{t_total:.3f} ms")
    return points


def fit_power_law(points, x="n"):
    """
    Least-squares fit of log t = log a + beta log x.
    :param x: "n" fits against the node count, "work" against n + m
    :return: PowerLawFit(coefficient a, exponent beta, RMS of the log residuals)
    """
    if x not in ("n", "work"):
        raise BenchConfigError(f"x must be 'n' or 'work', got {x!r}")
    if len(points) < 3:
        raise DegenerateFitError(f"need at least 3 points, got {len(points)}")
    xs = np.array([pt.n if x == "n" else pt.n + pt.m for pt in points], dtype=np.float64)
    ts = np.array([pt.t_total for pt in points], dtype=np.float64)
    if (ts <= 0).any() or (xs <= 0).any():
        raise DegenerateFitError("power-law fit needs positive sizes and times")
    if len(np.unique(xs)) < 2:
        raise DegenerateFitError("all points have the same size")
    log_x, log_t = np.log(xs), np.log(ts)
    beta, log_a = np.polyfit(log_x, log_t, 1)
    residual = float(np.sqrt(np.mean((log_t - (log_a + beta * log_x)) ** 2)))
    return PowerLawFit(float(np.exp(log_a)), float(beta), residual)


def write_block_csv(rows, path_or_buf):
    df = pd.DataFrame([row.to_row() for row in rows], columns=constants.BLOCK_CSV_COLUMNS)
    df.to_csv(path_or_buf, index=False)


def write_scaling_csv(points, path_or_buf):
    df = pd.DataFrame([pt.to_row() for pt in points], columns=constants.SCALING_CSV_COLUMNS)
    df.to_csv(path_or_buf, index=False)


def write_summary_json(path, summary):
    with open(path, 'w') as f:
        json.dump(summary, f, indent=2)


def scaling_summary(points, fit, x="n"):
    return {"fit": {"a": fit.coefficient, "beta": fit.exponent, "residual": fit.residual,
                    "x": x},
            "points": [asdict(pt) for pt in points]}
