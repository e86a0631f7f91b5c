"""Вес, растяжение и число рёбер на пути у спаннеров с единственным стоком"""
import itertools
import math

import numpy as np
import pytest

from app.domain.entities.metric_space import MetricSpace
from app.domain.services.checks import check_sink_stretch, check_single_sink, cluster_path_violations, sink_hops
from app.domain.services.metric import normalize
from app.domain.services.single_sink import build_vftsss
from tests.e2e.constants import SINK_HOP_OFFSET, SINK_HOP_SLOPE
from tests.e2e.helpers import built


def sink_instance(seed, max_n=30):
    """Сток и несколько удалённых кластеров разного масштаба (нормализовано)"""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, max_n + 1))
    k = int(rng.integers(0, 3))
    blobs = []
    for _ in range(int(rng.integers(1, 4))):
        center = rng.normal(size=2) * 10.0 ** rng.uniform(1, 4)
        blobs.append(center + rng.normal(size=(n, 2)) * 10.0 ** rng.uniform(0, 1.5))
    coords = np.vstack(blobs)[rng.permutation(n * len(blobs))[:n]]
    ms = normalize(MetricSpace.from_points(coords))[0]
    v = int(rng.integers(n))
    return ms, v, k


@pytest.mark.parametrize("eps_prime", [0.4 / 30, 1 / 6])
@pytest.mark.parametrize("seed", range(25))
def test_sink_weight_bound(seed, eps_prime):
    ms, v, k = sink_instance(seed)
    sink = build_vftsss(ms, list(range(ms.n)), v, k, eps_prime, 2.0)
    total = sum(ms.dist(x, v) for x in range(ms.n))
    assert sink.spanner.weight <= (1 + eps_prime) * (k + 1) * total * (1 + 1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_sink_stretch_and_hops(seed):
    ms, v, k = sink_instance(100 + seed, max_n=25)
    eps_prime = 1 / 6
    t = 1 + 10 * eps_prime
    sink = build_vftsss(ms, list(range(ms.n)), v, k, eps_prime, 2.0)
    hop_bound = SINK_HOP_SLOPE * math.log2(ms.n) + SINK_HOP_OFFSET
    others = [x for x in range(ms.n) if x != v]
    for size in range(k + 1):
        for failed in itertools.combinations(others, size):
            w = sink.spanner.weight_matrix(failed)
            targets = np.zeros(ms.n, dtype=bool)
            targets[[x for x in others if x not in failed]] = True
            hops = sink_hops(w, v, targets, t * ms.matrix[v] * (1 + 1e-12))
            assert hops <= hop_bound, (failed, hops)


@pytest.mark.parametrize("kind, n, k", [("uniform-cube", 25, 1), ("clustered", 25, 2), ("exp-spread-line", 25, 1)])
def test_sink_checks_on_built_spanners(kind, n, k):
    result = built(kind, n, k, 0.4)
    assert check_single_sink(result) == []
    assert check_sink_stretch(result) == []
    assert cluster_path_violations(result) == []
