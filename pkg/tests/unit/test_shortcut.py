import pytest

from app.domain.entities.incubator import Incubator, IncubatorEdgeKind, IncubatorGraph
from app.domain.entities.metric_space import MetricSpace
from app.domain.entities.nets import ColoredNets
from app.domain.services.hnets import build_nets
from app.domain.services.incubator import assign_zombies, build_incubator_graph, cross_radius_factor, induce_spanner
from app.domain.services.metric import diameter, normalize
from app.domain.services.shortcut import (
    SigmaCut,
    balanced_links,
    compute_sigma,
    floor_log2,
    heavy_paths,
    leaf_counts,
    shortcut_trees,
)
from app.application.use_cases.generate import generate_points


def caterpillar(depth):
    """Хребет (0, 1..depth) и по одному листу (L, L-1) у каждого узла хребта"""
    parent_of = {(0, 0): (0, 1)}
    for level in range(1, depth + 1):
        parent_of[(level, level - 1)] = (0, level)
        if level < depth:
            parent_of[(0, level)] = (0, level + 1)
    root = (0, depth)
    keys = set(parent_of) | {root}
    return IncubatorGraph(
        nets=ColoredNets(k=0, ell=depth, n=depth + 1, members=()),
        eps=0.3, gamma=cross_radius_factor(0.3), merged=True,
        incubators={key: Incubator(key[0], key[1], key[1], 0) for key in keys},
        level_index={},
        parent={key: parent_of.get(key) for key in keys},
        children={key: sorted(c for c, p in parent_of.items() if p == key) for key in keys},
        roots=(root,),
    )


def exp_line(n, k=1, eps=0.4):
    ms = normalize(MetricSpace.from_points(generate_points("exp-spread-line", n)))[0]
    graph = assign_zombies(build_incubator_graph(build_nets(ms, k), ms, eps / 3))
    return ms, graph


@pytest.mark.parametrize("value, expected", [(1.0, 0), (1.5, 0), (2.0, 1), (1023.9, 9), (0.5, -1), (0.3, -2), (0.0, -1)])
def test_floor_log2(value, expected):
    assert floor_log2(value) == expected


def test_sigma_example():
    cut = compute_sigma(1, 1000.0, 10, 578.0)
    assert cut.r_hat == pytest.approx(1000 / 57800)
    assert cut.sigma == -6
    assert not cut.active
    assert cut.subtree_roots == ()


def test_sigma_is_negative_without_faults():
    assert compute_sigma(0, 1e9, 10, 578.0).sigma == -1


def test_balanced_links_for_seven_positions():
    assert balanced_links(7) == [(3, 1), (3, 5)]


@pytest.mark.parametrize("p", [1, 2, 3])
def test_short_paths_need_no_links(p):
    assert balanced_links(p) == []


@pytest.mark.parametrize("p", [4, 10, 33, 100])
def test_balanced_links_form_tree_of_log_height(p):
    links = balanced_links(p)
    parent = {down: up for up, down in links}
    assert len(parent) == len(links)
    # соседние позиции соединены путём, остальное — ссылками
    for pos in range(p):
        hops, current = 0, pos
        while current in parent:
            current = parent[current]
            hops += 1
        assert hops <= p.bit_length()


def test_caterpillar_heavy_path():
    g = caterpillar(6)
    counts = leaf_counts(g, (0, 6))
    assert counts[(0, 6)] == 7
    paths = heavy_paths(g, (0, 6))
    spine = [(0, level) for level in range(6, -1, -1)]
    assert spine in paths
    assert sorted(key for path in paths for key in path) == sorted(g.incubators)


def test_caterpillar_shortcuts():
    g = caterpillar(6)
    result = shortcut_trees(g, SigmaCut(r_hat=1.0, sigma=0, subtree_roots=((0, 6),)))
    shortcuts = [(e.a, e.b) for e in result.of_kind(IncubatorEdgeKind.SHORTCUT)]
    assert sorted(shortcuts) == [((0, 1), (0, 3)), ((0, 3), (0, 5))]
    assert len(g.edges) == 0


def test_star_gets_no_shortcuts():
    root = (0, 1)
    leaves = [(i, 0) for i in range(5)]
    keys = leaves + [root]
    g = IncubatorGraph(
        nets=ColoredNets(k=0, ell=1, n=5, members=()), eps=0.3, gamma=cross_radius_factor(0.3), merged=True,
        incubators={key: Incubator(key[0], key[1], key[1], 0) for key in keys},
        level_index={}, parent={**{leaf: root for leaf in leaves}, root: None},
        children={**{leaf: [] for leaf in leaves}, root: leaves}, roots=(root,),
    )
    result = shortcut_trees(g, SigmaCut(1.0, 0, (root,)))
    assert result.of_kind(IncubatorEdgeKind.SHORTCUT) == []


def test_inactive_cut_keeps_graph():
    ms, graph = exp_line(12)
    cut = SigmaCut(r_hat=0.25, sigma=-2)
    assert shortcut_trees(graph, cut).edges == graph.edges


def test_exp_line_activates_shortcuts():
    ms, graph = exp_line(30)
    cut = compute_sigma(1, diameter(ms), ms.n, graph.gamma, graph)
    assert cut.active
    level = min(cut.sigma, graph.nets.ell)
    for root in cut.subtree_roots:
        inc = graph.incubators[root]
        assert inc.lo <= level <= inc.hi

    result = shortcut_trees(graph, cut)
    shortcuts = result.of_kind(IncubatorEdgeKind.SHORTCUT)
    inside = {key for root in cut.subtree_roots for key in graph.subtree(root)}
    for e in shortcuts:
        assert e.a in inside and e.b in inside
        assert graph.incubators[e.a].hi < graph.incubators[e.b].lo
    spanner = induce_spanner(result, ms)
    assert len(spanner) >= len(induce_spanner(graph, ms))
