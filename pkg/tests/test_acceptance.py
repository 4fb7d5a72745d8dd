"""End-to-end properties of the L-RCM pipeline on seeded random graphs."""
import numpy as np
import pytest

from lrcm.bench import fit_power_law, run_block_experiment, run_scaling_experiment
from lrcm.core import bandwidth, build_laplacian, permute_symmetric
from lrcm.detection import components_lrcm, detect_blocks_evec, find_cuts, lower_tri_row_sums
from lrcm.ordering import has_root_property, rcm_order
from lrcm.verify import (components_bfs, gen_block_graph, gen_complete_graph, gen_edgeless_graph,
                         gen_path_graph, gen_random_graph, gen_star_graph,
                         is_irreducible_bruteforce, shuffle_labels, zero_multiplicity)


def random_graphs(count, max_n, max_ratio, seed, min_n=1):
    rng = np.random.default_rng(seed)
    for i in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        m = min(int(rng.uniform(0, max_ratio) * n), n * (n - 1) // 2)
        yield gen_random_graph(n, m, seed=seed * 100000 + i)


@pytest.fixture(scope='module')
def oracle_instances():
    graphs = list(random_graphs(960, 500, 8.0, seed=1))
    graphs += [gen_edgeless_graph(n) for n in (1, 2, 50)]
    graphs += [shuffle_labels(gen_star_graph(n), seed=n) for n in (2, 3, 40, 300)]
    graphs += [shuffle_labels(gen_path_graph(n), seed=n) for n in (2, 5, 100, 500)]
    graphs += [gen_complete_graph(n) for n in (2, 3, 30)]
    # isolated nodes next to larger components
    graphs += [gen_block_graph(k, size, 0.1, seed=k) for k, size in ((5, 1), (3, 40), (10, 20))]
    graphs += [gen_block_graph(k, 30, 0.05, seed=k) for k in range(1, 27)]
    return graphs


def test_lrcm_matches_bfs(oracle_instances):
    assert len(oracle_instances) >= 1000
    mismatches = [g for g in oracle_instances if components_lrcm(g)[0] != components_bfs(g)]
    assert not mismatches


def test_cut_detectors_agree(oracle_instances):
    for g in oracle_instances:
        lhat = permute_symmetric(build_laplacian(g), rcm_order(g))
        assert detect_blocks_evec(lhat) == find_cuts(lower_tri_row_sums(lhat))


def test_every_non_root_has_a_higher_neighbour(oracle_instances):
    violations = [g for g in oracle_instances if not has_root_property(g, rcm_order(g))]
    assert not violations


def test_component_count_is_zero_multiplicity():
    for g in random_graphs(200, 128, 3.0, seed=2):
        assert zero_multiplicity(build_laplacian(g), 1e-8) == components_bfs(g).k


def test_irreducible_iff_connected():
    # a single node has the zero 1x1 Laplacian, which is reducible
    for g in random_graphs(500, 12, 2.0, seed=3, min_n=2):
        assert is_irreducible_bruteforce(build_laplacian(g)) == (components_bfs(g).k == 1)


def test_shuffled_paths_reach_bandwidth_one():
    for seed in range(50):
        g = shuffle_labels(gen_path_graph(1000), seed=seed)
        assert bandwidth(permute_symmetric(build_laplacian(g), rcm_order(g))) == 1


def test_rcm_rarely_widens_the_band():
    improved = 0
    for seed in range(200):
        g = gen_block_graph(1, 200 + seed, 0.01, seed=seed)
        laplacian = build_laplacian(g)
        if bandwidth(permute_symmetric(laplacian, rcm_order(g))) <= bandwidth(laplacian):
            improved += 1
    assert improved >= 180


@pytest.mark.slow
def test_scaling_is_near_linear_in_work():
    # below 2^12 nodes a run takes about a millisecond and fixed overhead dominates
    points = run_scaling_experiment([2 ** e for e in range(12, 17)], 0.005, reps=5, seed=11)
    fit = fit_power_law(points, x="work")
    assert 0.9 <= fit.exponent <= 1.3


@pytest.mark.slow
def test_phase_times_are_of_the_same_order():
    rows = run_block_experiment(2 ** 16, range(5, 14), reps=10, seed=12)
    for row in rows:
        assert max(row.t_rcm, row.t_permute) / min(row.t_rcm, row.t_permute) <= 10
        assert max(row.t_laplacian, row.t_sumfind) / min(row.t_laplacian, row.t_sumfind) <= 10
