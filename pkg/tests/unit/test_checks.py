import math
from dataclasses import replace

import numpy as np
import pytest

from app.application.use_cases.generate import generate_points
from app.config import BuildConfig
from app.domain.entities.metric_space import MetricSpace
from app.domain.entities.spanner import EdgeTag, Spanner
from app.domain.services.assembly import build_spanner
from app.domain.services.checks import (
    CHECKS,
    check_composed_paths,
    color_path,
    level_between,
    level_weights,
    path_length,
    run_checks,
    sink_hops,
    witness_path,
)
from app.domain.services.metric import min_distance

STRUCTURAL = ["nets", "mst-packing", "zombie-displacement", "reachability"]


def build(kind, n, k=1, eps=0.4, seed=0):
    ms = MetricSpace.from_points(generate_points(kind, n, seed=seed))
    return build_spanner(ms, BuildConfig.create(eps=eps, k=k))


@pytest.fixture(scope="module")
def uniform():
    return build("uniform-cube", 20, k=1, seed=3)


@pytest.fixture(scope="module")
def exp_line():
    return build("exp-spread-line", 18, k=1)


@pytest.mark.parametrize("distance, expected", [(2.0, 0), (3.0, 1), (4.0, 1), (4.5, 2), (1024.0, 9)])
def test_level_between(distance, expected):
    assert level_between(distance) == expected


def test_registry_names():
    assert set(CHECKS) == {
        "nets", "net-size", "mst-packing", "zombie-displacement", "reachability", "witness-path", "composed-path",
        "degrees", "shortcut", "level-weights", "single-sink", "sink-stretch", "cluster-paths",
    }


@pytest.mark.parametrize("name", ["uniform", "exp_line"])
def test_structural_checks_pass(name, request):
    result = request.getfixturevalue(name)
    assert run_checks(result, STRUCTURAL) == []


def test_color_path_stays_in_skeleton(exp_line):
    g = exp_line.graph
    for x in range(exp_line.nets.n):
        points = color_path(g, x, exp_line.nets.ell)
        assert points[0] == x
        assert exp_line.nets.top_level[points[-1]] == exp_line.nets.ell
        for a, b in zip(points, points[1:]):
            assert exp_line.base.get(a, b) is not None


def test_missing_tree_edges_break_reachability(exp_line):
    stripped = exp_line.base.filtered(lambda e: EdgeTag.LOCAL_TREE not in e.tags)
    tampered = type(exp_line)(**{**exp_line.__dict__, "base": stripped})
    found = run_checks(tampered, ["reachability"])
    assert found
    assert all(v.check == "reachability" for v in found)


def test_close_pair_uses_direct_cross_edge(uniform):
    _, (x, y) = min_distance(uniform.normalized)
    points, kinds = witness_path(uniform, x, y)
    assert points == [x, y]
    assert kinds == ["cross"]


def test_witness_path_avoids_failed_color(exp_line):
    nets = exp_line.nets
    x, y = 2, nets.n - 1
    failed = [p for p in range(nets.n) if nets.color[p] == 0][:1]
    points, kinds = witness_path(exp_line, x, y, failed)
    assert points[0] == x and points[-1] == y
    assert all(nets.color[p] == 1 for p in points[1:-1])
    assert kinds.count("foreign") <= 2
    assert path_length(exp_line, points) <= (1 + exp_line.graph.eps) * exp_line.normalized.dist(x, y) * (1 + 1e-9)


def test_level_weights_skip_without_faults():
    result = build("uniform-cube", 10, k=0)
    assert level_weights(result) == []


def test_sink_hops_on_path():
    w = np.full((3, 3), np.inf)
    np.fill_diagonal(w, 0.0)
    w[0, 1] = w[1, 0] = 1.0
    w[1, 2] = w[2, 1] = 1.0
    targets = np.array([False, True, True])
    assert sink_hops(w, 0, targets, np.full(3, np.inf)) == 2
    assert sink_hops(w, 0, targets, np.array([0.0, 1.0, 1.5])) == math.inf


def test_sink_hops_unreachable_target_with_infinite_bound():
    w = np.full((3, 3), np.inf)
    np.fill_diagonal(w, 0.0)
    w[0, 1] = w[1, 0] = 1.0
    targets = np.array([False, True, True])
    assert sink_hops(w, 0, targets, np.full(3, np.inf)) == math.inf
    assert sink_hops(w, 0, np.array([False, True, False]), np.full(3, np.inf)) == 1


@pytest.mark.parametrize("name", ["uniform", "exp_line"])
def test_witness_paths_compose_with_sink_spanners(name, request):
    result = request.getfixturevalue(name)
    assert check_composed_paths(result) == []


def test_composed_paths_need_sink_spanners(uniform):
    hollow = {x: replace(sink, spanner=Spanner(uniform.normalized.n)) for x, sink in uniform.sinks.items()}
    tampered = type(uniform)(**{**uniform.__dict__, "sinks": hollow})
    found = check_composed_paths(tampered)
    assert found
    assert all(v.check == "composed-path" for v in found)
