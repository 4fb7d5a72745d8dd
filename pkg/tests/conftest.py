import sys
from pathlib import Path

import numpy as np
import pytest

root_dir = Path(__file__).resolve().parent.parent
for sub in ('models', 'tools'):
    path = str(root_dir.joinpath(sub))
    if path not in sys.path:
        sys.path.append(path)

from lrcm.core import SparseSymMatrix  # noqa: E402
from lrcm.formats import parse_edge_list  # noqa: E402

DATA_DIR = root_dir.joinpath('tests', 'test_dataset', 'small_graphs')


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help='run the timing-based acceptance benchmarks')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: timing-based benchmark, needs --runslow')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


def load_graph(name):
    return parse_edge_list(DATA_DIR.joinpath(name).read_text())


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def four_components():
    return load_graph('four_components.txt')


@pytest.fixture
def two_pairs():
    return load_graph('two_pairs.txt')


@pytest.fixture
def path4():
    return load_graph('path4.txt')


@pytest.fixture
def four_components_lhat():
    return SparseSymMatrix.from_dense(np.loadtxt(DATA_DIR.joinpath('four_components_lhat.txt'),
                                                 dtype=np.int64))


@pytest.fixture
def two_pairs_lhat():
    return SparseSymMatrix.from_dense(np.array([[1, -1, 0, 0],
                                                [-1, 1, 0, 0],
                                                [0, 0, 1, -1],
                                                [0, 0, -1, 1]]))


@pytest.fixture
def path4_lhat():
    return SparseSymMatrix.from_dense(np.array([[1, -1, 0, 0],
                                                [-1, 2, -1, 0],
                                                [0, -1, 2, -1],
                                                [0, 0, -1, 1]]))
