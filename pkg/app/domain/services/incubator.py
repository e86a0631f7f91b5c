import logging
from collections import defaultdict
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.domain.entities.incubator import (
    Incubator,
    IncubatorEdge,
    IncubatorEdgeKind,
    IncubatorGraph,
    IncubatorKey,
)
from app.domain.entities.metric_space import MetricSpace
from app.domain.entities.nets import ColoredNets
from app.domain.entities.spanner import EdgeTag, Spanner
from app.domain.exceptions import InvalidParameterError, UnmergedGraphError

logger = logging.getLogger(__name__)

ZOMBIE_KINDS = (IncubatorEdgeKind.LOCAL_TREE, IncubatorEdgeKind.SHORTCUT)

EDGE_TAGS = {
    IncubatorEdgeKind.LOCAL_TREE: EdgeTag.LOCAL_TREE,
    IncubatorEdgeKind.SHORTCUT: EdgeTag.SHORTCUT,
    IncubatorEdgeKind.FOREIGN: EdgeTag.FOREIGN,
    IncubatorEdgeKind.CROSS: EdgeTag.CROSS,
}


def cross_radius_factor(eps: float) -> float:
    """γ = 34 + 272/ε"""
    return 34.0 + 272.0 / eps


def closest_point(d: np.ndarray, x: int, candidates) -> int:
    """Ближайшая к x точка из отсортированного набора; при равенстве — меньший индекс"""
    idx = list(candidates)
    return idx[int(np.argmin(d[x, idx]))]


def build_incubator_graph(nets: ColoredNets, ms: MetricSpace, eps: float, merge: bool = True) -> IncubatorGraph:
    """
    Строит граф инкубаторов: локальные и чужие рёбра деревьев и кросс-рёбра.

    Args:
        nets: цветные иерархии сетей над ms
        ms: нормализованное метрическое пространство
        eps: параметр растяжения, γ = 34 + 272/eps
        merge: сливать одинокие инкубаторы (ровно один локальный ребёнок)

    Returns:
        IncubatorGraph без зомби
    """
    if not 0 < eps < 0.5:
        raise InvalidParameterError(f"eps must lie in (0, 1/2), got {eps}")
    gamma = cross_radius_factor(eps)
    d = ms.matrix
    ell = nets.ell

    local_parent: Dict[Tuple[int, int], int] = {}
    child_count: Dict[Tuple[int, int], int] = defaultdict(int)
    for i in range(ell):
        for c in nets.colors:
            upper = nets.net(i + 1, c)
            for x in nets.net(i, c):
                p = closest_point(d, x, upper)
                local_parent[(x, i)] = p
                child_count[(p, i + 1)] += 1

    incubators: Dict[IncubatorKey, Incubator] = {}
    level_index: Dict[Tuple[int, int], IncubatorKey] = {}
    for x in range(nets.n):
        top = nets.top_level[x]
        starts = [i for i in range(top + 1) if i == 0 or not merge or child_count[(x, i)] != 1]
        for lo, nxt in zip(starts, starts[1:] + [top + 1]):
            incubators[(x, lo)] = Incubator(identity=x, lo=lo, hi=nxt - 1, color=nets.color[x])
            for i in range(lo, nxt):
                level_index[(x, i)] = (x, lo)

    parent: Dict[IncubatorKey, Optional[IncubatorKey]] = {key: None for key in incubators}
    children: Dict[IncubatorKey, List[IncubatorKey]] = {key: [] for key in incubators}
    edges: List[IncubatorEdge] = []

    for key in sorted(incubators):
        inc = incubators[key]
        if inc.hi == ell:
            continue
        upper = level_index[(local_parent[(inc.identity, inc.hi)], inc.hi + 1)]
        parent[key] = upper
        children[upper].append(key)
        edges.append(IncubatorEdge(IncubatorEdgeKind.LOCAL_TREE, key, upper, inc.hi))
    for key in children:
        children[key].sort()

    for x in range(nets.n):
        top = nets.top_level[x]
        if top >= ell:
            continue
        for c in nets.colors:
            if c == nets.color[x]:
                continue
            y = closest_point(d, x, nets.net(top + 1, c))
            edges.append(IncubatorEdge(IncubatorEdgeKind.FOREIGN, level_index[(x, top)], level_index[(y, top + 1)], top))

    for i in range(ell + 1):
        members = np.asarray(nets.level_members(i), dtype=np.int64)
        if len(members) < 2:
            continue
        close = np.triu(d[np.ix_(members, members)] <= gamma * nets.radius(i), k=1)
        for a, b in zip(*np.nonzero(close)):
            u, v = int(members[a]), int(members[b])
            edges.append(IncubatorEdge(IncubatorEdgeKind.CROSS, level_index[(u, i)], level_index[(v, i)], i))

    graph = IncubatorGraph(
        nets=nets, eps=eps, gamma=gamma, merged=merge,
        incubators=incubators, level_index=level_index,
        parent=parent, children=children,
        roots=tuple(level_index[(nets.net(ell, c)[0], ell)] for c in nets.colors),
        edges=edges,
    )
    logger.info(
        "incubator graph: %d incubators (%d super), %d edges, gamma=%.1f",
        len(incubators), sum(inc.is_super for inc in incubators.values()), len(edges), gamma,
    )
    return graph


def assign_zombies(g: IncubatorGraph) -> IncubatorGraph:
    """
    Заселяет инкубаторы зомби.

    Листья каждого цвета обрабатываются по возрастанию identity: лист занимает
    зомби со своей identity, клон поднимается до первого свободного предка
    и исчезает, если занят корень.
    """
    for key in sorted(g.incubators):
        if 0 < len(g.children[key]) < 2:
            raise UnmergedGraphError(key)

    result = g.copy()
    zombies: Dict[IncubatorKey, int] = {}
    for c in g.nets.colors:
        leaves = [key for key in g.tree(c) if g.is_leaf(key)]
        for leaf in sorted(leaves):
            x = g.incubators[leaf].identity
            zombies[leaf] = x
            current = g.parent[leaf]
            while current is not None and current in zombies:
                current = g.parent[current]
            if current is not None:
                zombies[current] = x

    empty = [key for key in sorted(g.incubators) if key not in zombies]
    if empty:
        raise UnmergedGraphError(empty[0])
    result.zombies = zombies
    logger.info("zombies assigned to %d incubators", len(zombies))
    return result


def induce_spanner(g: IncubatorGraph, ms: MetricSpace) -> Spanner:
    """Рёбра скелета соединяют зомби, чужие и кросс-рёбра — identity"""
    if len(g.zombies) != len(g.incubators):
        raise UnmergedGraphError(next(k for k in sorted(g.incubators) if k not in g.zombies))
    spanner = Spanner(ms.n)
    for e in g.edges:
        if e.kind in ZOMBIE_KINDS:
            u, v = g.zombies[e.a], g.zombies[e.b]
        else:
            u, v = e.a[0], e.b[0]
        if u != v:
            spanner.add(u, v, ms.dist(u, v), (EDGE_TAGS[e.kind],))
    logger.info("induced spanner: %d edges, weight %.3f", len(spanner), spanner.weight)
    return spanner


def edge_head(u: int, v: int, tags, top_level) -> Optional[int]:
    """Конец, в который направлено ребро; None для рёбер без чужого и кросс-тега"""
    rank_u, rank_v = top_level[u], top_level[v]
    if EdgeTag.FOREIGN in tags and rank_u != rank_v:
        return u if rank_u > rank_v else v
    if EdgeTag.CROSS in tags or EdgeTag.FOREIGN in tags:
        return u if (rank_u, u) > (rank_v, v) else v
    return None


def direct_edges(s: Spanner, nets: ColoredNets) -> Spanner:
    """Ориентирует чужие рёбра к родителю, кросс-рёбра — к большему i*, затем к большему индексу"""
    result = Spanner(s.n)
    for e in s:
        result.add(e.u, e.v, e.weight, e.tags, edge_head(e.u, e.v, e.tags, nets.top_level))
    return result
