import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from app.application.use_cases.generate import generate_points
from app.domain.entities.metric_space import MetricSpace
from app.domain.exceptions import DuplicatePointError, InvalidParameterError
from app.domain.services.metric import diameter, mst, normalize, validate_matrix


def kruskal_weight(ms: MetricSpace) -> float:
    graph = nx.Graph()
    for i in range(ms.n):
        for j in range(i + 1, ms.n):
            graph.add_edge(i, j, weight=ms.dist(i, j))
    tree = nx.minimum_spanning_tree(graph, algorithm="kruskal")
    return sum(w for _, _, w in tree.edges(data="weight"))


def test_normalize_two_points():
    normalized, scale = normalize(MetricSpace.from_points([[0.0], [0.5]]))
    assert scale == 4.0
    assert normalized.dist(0, 1) == pytest.approx(2.0)


def test_normalize_fixed_point_keeps_space():
    ms = MetricSpace.from_points([[0.0], [2.0], [5.0]])
    normalized, scale = normalize(ms)
    assert scale == 1.0
    assert normalized is ms


def test_normalize_collinear_points():
    normalized, scale = normalize(MetricSpace.from_points([[0.0], [0.1], [1.0]]))
    assert scale == pytest.approx(20.0)
    assert normalized.dist(0, 1) == pytest.approx(2.0)
    assert normalized.dist(1, 2) == pytest.approx(18.0)
    assert normalized.dist(0, 2) == pytest.approx(20.0)


def test_normalize_is_idempotent():
    rng = np.random.default_rng(3)
    once, _ = normalize(MetricSpace.from_points(rng.random((12, 2))))
    twice, scale = normalize(once)
    assert scale == 1.0
    assert twice is once


def test_normalize_rejects_duplicates_with_pair():
    with pytest.raises(DuplicatePointError) as info:
        normalize(MetricSpace.from_points([[0.0, 0.0], [1.0, 1.0], [0.0, 0.0]]))
    assert info.value.pair == (0, 2)


def test_normalize_needs_two_points():
    with pytest.raises(InvalidParameterError):
        normalize(MetricSpace.from_points([[1.0, 2.0]]))


def test_normalize_rejects_infinite_distances():
    with pytest.raises(InvalidParameterError):
        normalize(MetricSpace.from_matrix([[0, math.inf], [math.inf, 0]]))


def test_exp_spread_line_distances_stay_finite_at_generator_limit():
    ms = MetricSpace.from_points(generate_points("exp-spread-line", 1000, 2, 0))
    assert np.isfinite(ms.matrix).all()
    assert ms.dist(0, 999) == 2.0 ** 1000 - 2.0
    assert ms.dist(998, 999) == 2.0 ** 999
    _, scale = normalize(ms)
    assert scale == 1.0


def test_large_coordinates_keep_euclidean_distance():
    ms = MetricSpace.from_points([[0.0, 0.0], [3e200, 4e200]])
    assert ms.dist(0, 1) == pytest.approx(5e200)


def test_diameter_examples():
    assert diameter(MetricSpace.from_points([[4.0, 4.0]])) == 0.0
    assert diameter(MetricSpace.from_points([[0.0], [7.0]])) == 7.0
    square = MetricSpace.from_points([[0, 0], [1, 0], [0, 1], [1, 1]])
    assert diameter(square) == pytest.approx(math.sqrt(2))


def test_mst_small_cases():
    assert mst(MetricSpace.from_points([[0.0], [3.0]])).weight == 3.0
    triangle = MetricSpace.from_matrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    result = mst(triangle)
    assert result.weight == 2.0
    assert len(result.edges) == 2
    assert mst(MetricSpace.from_points([[1.0]])).weight == 0.0


def test_mst_is_spanning_tree():
    rng = np.random.default_rng(11)
    ms = MetricSpace.from_points(rng.random((10, 2)))
    result = mst(ms)
    graph = nx.Graph(list(result.edges))
    assert graph.number_of_nodes() == 10
    assert nx.is_tree(graph)
    assert result.weight == pytest.approx(sum(ms.dist(u, v) for u, v in result.edges))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=25), st.integers(min_value=0, max_value=10_000))
def test_mst_matches_kruskal(n, seed):
    ms = MetricSpace.from_points(np.random.default_rng(seed).random((n, 2)))
    result = mst(ms)
    assert result.weight == pytest.approx(kruskal_weight(ms), rel=1e-12)
    assert result.weight >= diameter(ms) * (1 - 1e-12)


def test_validate_matrix_rejects_asymmetry():
    with pytest.raises(InvalidParameterError):
        validate_matrix(MetricSpace.from_matrix([[0, 1], [2, 0]]))


def test_validate_matrix_triangle_on_demand():
    bad = MetricSpace.from_matrix([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    validate_matrix(bad)
    with pytest.raises(InvalidParameterError, match="triangle"):
        validate_matrix(bad, check_triangle=True)


def test_validate_matrix_duplicate_points():
    with pytest.raises(DuplicatePointError):
        validate_matrix(MetricSpace.from_matrix([[0, 0], [0, 0]]))
