import numpy as np
import pytest

from oracles import make_graph

# two triangles joined by a bridge; the optimal split is the two triangles
BARBELL_EDGES = [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]
BARBELL_MODULARITY = 5.0 / 14.0


@pytest.fixture
def barbell():
    return make_graph(BARBELL_EDGES)


@pytest.fixture
def triangle():
    return make_graph([(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def single_edge():
    return make_graph([(0, 1)])


@pytest.fixture
def star6():
    return make_graph([(0, i) for i in range(1, 6)])


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
