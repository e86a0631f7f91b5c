"""Свойства промежуточных структур: сети, зомби, пути достижимости, степени, сокращения"""
import numpy as np
import pytest

from app.domain.entities.metric_space import MetricSpace
from app.domain.services.checks import run_checks
from app.domain.services.hnets import build_nets, validate_nets
from app.domain.services.incubator import assign_zombies, build_incubator_graph
from app.domain.services.metric import normalize
from tests.e2e.constants import DEGREE_FACTOR, DEGREE_MAX_N
from tests.e2e.helpers import built, points

KINDS = ["uniform-cube", "clustered", "exp-spread-line"]


def random_instance(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 41))
    dim = int(rng.integers(1, 4))
    spread = 10.0 ** rng.uniform(0, 3, size=(n, 1))
    coords = rng.normal(size=(n, dim)) * spread
    k = int(rng.integers(0, min(3, n - 2) + 1))
    return normalize(MetricSpace.from_points(coords))[0], k


@pytest.mark.parametrize("seed", range(200))
def test_zombie_displacement(seed):
    ms, k = random_instance(seed)
    nets = build_nets(ms, k)
    assert validate_nets(nets, ms) == []
    graph = assign_zombies(build_incubator_graph(nets, ms, 0.4 / 3))
    for key, inc in graph.incubators.items():
        z = graph.zombies[key]
        assert ms.dist(inc.identity, z) <= 2 * nets.radius(inc.lo) * (1 + 1e-12)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n, k", [(12, 1), (20, 2), (30, 1)])
def test_reachability_witness_and_composed_paths(kind, n, k):
    result = built(kind, n, k, 0.4)
    assert run_checks(result, ["nets", "reachability", "zombie-displacement", "witness-path", "composed-path"]) == []


@pytest.mark.parametrize("seed", range(100))
def test_degree_bounds(seed):
    kind = KINDS[seed % 3]
    n = 10 + (seed * 7) % (DEGREE_MAX_N - 9)
    k = 1 + seed % 2
    result = built(kind, n, k, 0.4, seed)
    assert run_checks(result, ["degrees"]) == []
    assert int(result.spanner.degrees().max()) <= DEGREE_FACTOR * k * k


@pytest.mark.parametrize("n", [20, 30, 40])
def test_shortcut_contract_on_exp_line(n):
    result = built("exp-spread-line", n, 1, 0.4)
    assert result.cut.active
    assert run_checks(result, ["shortcut"]) == []


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("seed", range(5))
def test_generated_nets_are_valid(kind, seed):
    for n in (8, 24, 50):
        ms = normalize(points(kind, n, seed))[0]
        for k in (0, 1, 3):
            assert validate_nets(build_nets(ms, k), ms) == []
