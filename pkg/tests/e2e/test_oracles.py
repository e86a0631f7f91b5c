"""Независимый оракул MST (алгоритм Краскала из networkx)"""
import itertools

import networkx as nx
import numpy as np
import pytest

from app.domain.entities.metric_space import MetricSpace
from app.domain.services.metric import mst


@pytest.mark.parametrize("seed", range(100))
def test_mst_matches_kruskal(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 40))
    ms = MetricSpace.from_points(rng.random((n, int(rng.integers(1, 4)))))
    graph = nx.Graph()
    for u, v in itertools.combinations(range(n), 2):
        graph.add_edge(u, v, weight=ms.dist(u, v))
    tree = nx.minimum_spanning_tree(graph, algorithm="kruskal")
    expected = sum(w for _, _, w in tree.edges(data="weight"))
    assert mst(ms).weight == pytest.approx(expected, rel=1e-12)
