import logging
import math
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from app.domain.entities.metric_space import MetricSpace
from app.domain.entities.spanner import EdgeTag, Spanner
from app.domain.exceptions import InvalidParameterError

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class RingPartition:
    """
    Разбиение точек вокруг стока v на кольца r_{i-1} < d(v, x) <= r_i, r_i = (1/ε′)^i.

    В каждом кольце — жадная (ε′·r_{i-1})-сеть, кластеры по ближайшей точке сети
    и до k+1 порталов в кластере.
    """

    sink: int
    eps_prime: float
    fanout: int  # Γ = ⌈ε′^(-4·dim)⌉
    rings: Dict[int, Tuple[int, ...]]
    nets: Dict[int, Tuple[int, ...]]
    clusters: Dict[int, Tuple[int, ...]]  # центр -> точки кластера
    portals: Dict[int, Tuple[int, ...]]
    ring_of: Dict[int, int]  # центр -> номер кольца

    def ring_radius(self, i: int) -> float:
        return ring_radius(self.eps_prime, i)

    def cluster_radius(self, center: int) -> float:
        return self.eps_prime * self.ring_radius(self.ring_of[center] - 1)


@dataclass(frozen=True)
class PortalGroups:
    groups: Tuple[Tuple[int, ...], ...]  # groups[0] == (v,)
    parents: Tuple[int, ...]  # parents[0] == -1

    @property
    def depth(self) -> int:
        depths = [0] * len(self.groups)
        for j in range(1, len(self.groups)):
            depths[j] = depths[self.parents[j]] + 1
        return max(depths)


@dataclass
class SingleSinkSpanner:
    sink: int
    points: Tuple[int, ...]
    rings: RingPartition
    groups: PortalGroups
    portal_edges: List[Pair]
    cluster_edges: Dict[int, List[Pair]] = field(default_factory=dict)
    add_depth: Dict[int, int] = field(default_factory=dict)
    spanner: Spanner = None

    @property
    def edges(self) -> List[Pair]:
        return sorted(e.key for e in self.spanner)


def ring_radius(eps_prime: float, i: int) -> float:
    return (1.0 / eps_prime) ** i


def portal_fanout(eps_prime: float, dim: float) -> int:
    try:
        return math.ceil(eps_prime ** (-4.0 * dim))
    except OverflowError:
        return sys.maxsize


def ring_index(distance: float, eps_prime: float) -> int:
    """Наименьшее i >= 1 с distance <= r_i"""
    i = 1
    while distance > ring_radius(eps_prime, i):
        i += 1
    return i


def greedy_net(d: np.ndarray, points: Sequence[int], radius: float) -> List[int]:
    """Жадная сеть в порядке возрастания индекса: новые точки дальше radius от всех выбранных"""
    net: List[int] = []
    for x in sorted(points):
        if not net or np.min(d[x, net]) > radius:
            net.append(x)
    return net


def assign_clusters(d: np.ndarray, points: Sequence[int], centers: Sequence[int]) -> Dict[int, Tuple[int, ...]]:
    centers = sorted(centers)
    members: Dict[int, List[int]] = {c: [] for c in centers}
    for x in sorted(points):
        members[centers[int(np.argmin(d[x, centers]))]].append(x)
    return {c: tuple(xs) for c, xs in members.items() if xs}


def partition_rings(ms: MetricSpace, pts: Sequence[int], v: int, k: int, eps_prime: float, dim: float) -> RingPartition:
    d = ms.matrix
    by_ring: Dict[int, List[int]] = {}
    for x in sorted(set(pts) - {v}):
        by_ring.setdefault(ring_index(d[v, x], eps_prime), []).append(x)

    nets, clusters, portals, ring_of = {}, {}, {}, {}
    for i, members in sorted(by_ring.items()):
        net = greedy_net(d, members, eps_prime * ring_radius(eps_prime, i - 1))
        nets[i] = tuple(net)
        for center, cluster in assign_clusters(d, members, net).items():
            clusters[center] = cluster
            portals[center] = cluster[: k + 1]
            ring_of[center] = i
    return RingPartition(
        sink=v, eps_prime=eps_prime, fanout=portal_fanout(eps_prime, dim),
        rings={i: tuple(xs) for i, xs in by_ring.items()},
        nets=nets, clusters=clusters, portals=portals, ring_of=ring_of,
    )


def parent_group(j: int, fanout: int) -> int:
    """parent(j) = ⌈(j − 2Γ − 1)/2⌉, не меньше 0"""
    return max(0, -((-(j - 2 * fanout - 1)) // 2))


def group_portals(ms: MetricSpace, portals: Sequence[int], v: int, k: int, fanout: int) -> Tuple[PortalGroups, List[Pair]]:
    """Группы порталов по k+1 в порядке d(v, ·); каждая группа полностью связана с родительской"""
    d = ms.matrix
    ordered = sorted(portals, key=lambda q: (d[v, q], q))
    groups = [(v,)] + [tuple(ordered[s:s + k + 1]) for s in range(0, len(ordered), k + 1)]
    parents = [-1] + [parent_group(j, fanout) for j in range(1, len(groups))]
    pairs = [(a, b) for j in range(1, len(groups)) for a in groups[j] for b in groups[parents[j]]]
    return PortalGroups(groups=tuple(groups), parents=tuple(parents)), pairs


def add_cluster_edges(
    ms: MetricSpace, cluster: Sequence[int], portals: Sequence[int], radius: float, k: int, depth: int = 0,
) -> Tuple[List[Pair], int]:
    """
    Рекурсивно связывает кластер с его порталами.

    C∖Q делится пополам по индексу, в каждой половине строится (r/2)-сеть,
    порталы подкластеров полностью связываются с Q, рекурсия с радиусом r/2.

    Returns:
        (рёбра, глубина рекурсии)
    """
    rest = sorted(set(cluster) - set(portals))
    if not rest:
        return [], depth
    d = ms.matrix
    half = (len(rest) + 1) // 2
    pairs: List[Pair] = []
    deepest = depth + 1
    for part in (rest[:half], rest[half:]):
        if not part:
            continue
        for sub in assign_clusters(d, part, greedy_net(d, part, radius / 2)).values():
            sub_portals = sub[: k + 1]
            pairs.extend((a, b) for a in portals for b in sub_portals)
            sub_pairs, sub_depth = add_cluster_edges(ms, sub, sub_portals, radius / 2, k, depth + 1)
            pairs.extend(sub_pairs)
            deepest = max(deepest, sub_depth)
    return pairs, deepest


def build_vftsss(ms: MetricSpace, pts: Sequence[int], v: int, k: int, eps_prime: float, dim: float) -> SingleSinkSpanner:
    """
    Отказоустойчивый спаннер с единственным стоком v над точками pts.

    Рёбра помечены тегом SINK, веса — расстояния ms.
    """
    if not 0 < eps_prime <= 1 / 6:
        raise InvalidParameterError(f"eps' must lie in (0, 1/6], got {eps_prime}")
    if v not in pts:
        raise InvalidParameterError(f"sink {v} is not among the points")
    points = tuple(sorted(set(pts)))
    rings = partition_rings(ms, points, v, k, eps_prime, dim)
    all_portals = [q for center in sorted(rings.portals) for q in rings.portals[center]]
    groups, portal_edges = group_portals(ms, all_portals, v, k, rings.fanout)

    spanner = Spanner(ms.n)
    for a, b in portal_edges:
        spanner.add(a, b, ms.dist(a, b), (EdgeTag.SINK,))
    cluster_edges: Dict[int, List[Pair]] = {}
    add_depth: Dict[int, int] = {}
    for center in sorted(rings.clusters):
        pairs, depth = add_cluster_edges(
            ms, rings.clusters[center], rings.portals[center], rings.cluster_radius(center), k,
        )
        cluster_edges[center] = pairs
        add_depth[center] = depth
        for a, b in pairs:
            spanner.add(a, b, ms.dist(a, b), (EdgeTag.SINK,))

    logger.debug(
        "sink %d: %d points, %d rings, %d portals, %d edges",
        v, len(points), len(rings.rings), len(all_portals), len(spanner),
    )
    return SingleSinkSpanner(
        sink=v, points=points, rings=rings, groups=groups, portal_edges=portal_edges,
        cluster_edges=cluster_edges, add_depth=add_depth, spanner=spanner,
    )


def geometric_path_length(ms: MetricSpace, path: Sequence[int]) -> float:
    return float(sum(ms.dist(a, b) for a, b in zip(path, path[1:])))


def is_geometric_chain(ms: MetricSpace, path: Sequence[int], eps_prime: float) -> bool:
    """v = p_0, ..., p_l с d(v, p_i) <= ε′·d(v, p_{i+1}) для всех i"""
    if not path:
        return False
    v = path[0]
    return all(ms.dist(v, a) <= eps_prime * ms.dist(v, b) for a, b in zip(path, path[1:]))
