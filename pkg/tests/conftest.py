import os
import sys

# Ajout de la racine (main.py) et de src au PYTHONPATH, comme dans main.py
tests_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(tests_dir, '..'))
sys.path.insert(0, os.path.join(tests_dir, '..', 'src'))

import numpy as np  # noqa: E402
import pytest  # noqa: E402

from graph.neighbor_graph import NeighborGraph  # noqa: E402


def transitive_closure(g: NeighborGraph) -> np.ndarray:
    """Oracle : fermeture réflexive-transitive booléenne de la matrice d'adjacence"""
    reach = g.adjacency | np.eye(g.order, dtype=bool)
    for k in range(g.order):
        reach = reach | (reach[:, [k]] & reach[[k], :])
    return reach


def random_graph(rng: np.random.Generator, n: int, p: float = 0.4, with_leader: bool = False) -> NeighborGraph:
    first = 0 if with_leader else 1
    vertices = range(first, n + 1)
    edges = {(i, j) for i in vertices for j in vertices if i < j and rng.random() < p}
    return NeighborGraph(n, frozenset(edges), with_leader)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
