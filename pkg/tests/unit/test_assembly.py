import numpy as np
import pytest

from app.application.use_cases.generate import generate_points
from app.config import BuildConfig
from app.domain.entities.metric_space import MetricSpace
from app.domain.entities.spanner import EdgeTag
from app.domain.exceptions import DuplicatePointError, InvalidParameterError
from app.domain.services.assembly import build_spanner
from app.domain.services.verify import fault_stretch


def cfg(eps=0.4, k=1):
    return BuildConfig.create(eps=eps, k=k)


def test_two_points_single_edge():
    ms = MetricSpace.from_points([[0.0], [3.0]])
    result = build_spanner(ms, cfg(k=0))
    assert [e.key for e in result.spanner] == [(0, 1)]
    assert result.spanner.get(0, 1).weight == pytest.approx(3.0)


def test_k_too_large():
    ms = MetricSpace.from_points([[0.0], [1.0], [2.0]])
    with pytest.raises(InvalidParameterError):
        build_spanner(ms, cfg(k=2))


def test_duplicates_rejected():
    ms = MetricSpace.from_points([[0.0], [1.0], [0.0]])
    with pytest.raises(DuplicatePointError) as e:
        build_spanner(ms, cfg(k=0))
    assert e.value.pair == (0, 2)


def test_eps_out_of_range():
    with pytest.raises(InvalidParameterError):
        cfg(eps=0.5)


def test_build_is_deterministic():
    ms = MetricSpace.from_points(generate_points("clustered", 30, seed=4))
    first = build_spanner(ms, cfg(k=2))
    second = build_spanner(ms, cfg(k=2))
    assert [(e.key, e.tags) for e in first.spanner] == [(e.key, e.tags) for e in second.spanner]


def test_weights_are_original_distances():
    points = generate_points("uniform-cube", 20, seed=1) * 1000
    ms = MetricSpace.from_points(points)
    result = build_spanner(ms, cfg())
    assert result.scale != 1.0
    for e in result.spanner:
        assert e.weight == pytest.approx(np.linalg.norm(points[e.u] - points[e.v]))


def test_sink_replaces_in_stars():
    ms = MetricSpace.from_points(generate_points("uniform-cube", 24, seed=2))
    result = build_spanner(ms, cfg(k=1))
    assert set(result.sinks) == set(result.in_stars)
    for e in result.spanner:
        assert e.tags & {EdgeTag.LOCAL_TREE, EdgeTag.SHORTCUT, EdgeTag.SINK}
    for x, tails in result.in_stars.items():
        assert set(result.sinks[x].points) == set(tails) | {x}


def test_exp_line_uses_shortcuts():
    ms = MetricSpace.from_points(generate_points("exp-spread-line", 30))
    result = build_spanner(ms, cfg(k=1))
    assert result.cut.active
    assert result.cut.subtree_roots


@pytest.mark.parametrize("kind, k", [("uniform-cube", 0), ("uniform-cube", 1), ("clustered", 2), ("exp-spread-line", 1)])
def test_small_builds_are_fault_tolerant_spanners(kind, k):
    ms = MetricSpace.from_points(generate_points(kind, 16, seed=5))
    result = build_spanner(ms, cfg(eps=0.3, k=k))
    report = fault_stretch(result.spanner, ms, k, 1.3, mode="exhaustive", jobs=1)
    assert report.violations == []
    assert report.max_stretch <= 1.3 * (1 + 1e-9)
