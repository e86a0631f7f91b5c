"""
Именованные проверки свойств построения.

Каждая проверка принимает BuildResult и возвращает список нарушений
(пустой — успех). Все расстояния берутся из нормализованного пространства.
"""
import itertools
import logging
import math
from collections import Counter, deque
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.config import settings
from app.domain.entities.incubator import IncubatorEdgeKind, IncubatorGraph, IncubatorKey
from app.domain.entities.report import Violation
from app.domain.entities.spanner import EdgeTag, Spanner
from app.domain.services.assembly import BuildResult
from app.domain.services.hnets import net_size_violations, validate_nets
from app.domain.services.metric import mst
from app.domain.services.shortcut import heavy_paths
from app.domain.services.verify import RELATIVE_SLACK, sampled_sets, shortest_paths

logger = logging.getLogger(__name__)

MAX_REPORTED = 50
HOP_SLOPE = 3
HOP_OFFSET = 6

Path = Tuple[List[int], List[str]]  # точки и виды переходов: tree | foreign | cross


def _within(value: float, bound: float) -> bool:
    return value <= bound * (1 + RELATIVE_SLACK)


def _capped(violations: List[Violation]) -> List[Violation]:
    return violations[:MAX_REPORTED]


def level_between(distance: float) -> int:
    """i с r_i < distance <= r_{i+1}"""
    mantissa, exponent = math.frexp(distance)
    return exponent - 2 if mantissa == 0.5 else exponent - 1


def path_length(result: BuildResult, points: Sequence[int]) -> float:
    ms = result.normalized
    return float(sum(ms.dist(a, b) for a, b in zip(points, points[1:])))


def _dedupe(points: Iterable[int]) -> List[int]:
    out: List[int] = []
    for p in points:
        if not out or out[-1] != p:
            out.append(p)
    return out


def color_path(g: IncubatorGraph, x: int, level: int) -> List[int]:
    """
    c-путь из x к identity предка уровня level: подъём по зомби от листа (x, 0),
    затем спуск по цепочке identity этого предка до её листа.
    """
    climb = [g.level_index[(x, 0)]]
    while g.incubators[climb[-1]].hi < level:
        climb.append(g.parent[climb[-1]])
    top = g.incubators[climb[-1]]
    descend = _dedupe(g.level_index[(top.identity, lvl)] for lvl in range(top.lo, -1, -1))
    return _dedupe([g.zombies[key] for key in climb] + [g.zombies[key] for key in descend])


def foreign_parent(g: IncubatorGraph, x: int, color: int) -> int:
    child = g.level_index[(x, g.nets.top_level[x])]
    return g.foreign_parents[(child, color)][0]


def reachability_path(g: IncubatorGraph, x: int, level: int, color: int) -> Path:
    """Путь от x до identity инкубатора уровня level через точки цвета color"""
    if g.nets.color[x] == color:
        points = color_path(g, x, level)
        return points, ["tree"] * (len(points) - 1)
    rest = color_path(g, foreign_parent(g, x, color), level)
    return [x] + rest, ["foreign"] + ["tree"] * (len(rest) - 1)


def witness_path(result: BuildResult, x: int, y: int, failed: Sequence[int] = ()) -> Path:
    """t-путь между x и y в H₀∖S: не более двух чужих рёбер и одного кросс-ребра"""
    colors = {result.nets.color[p] for p in failed}
    color = min(c for c in result.nets.colors if c not in colors)
    return witness_path_for_color(result, x, y, color)


def witness_path_for_color(result: BuildResult, x: int, y: int, color: int) -> Path:
    g, ms = result.graph, result.normalized
    i = level_between(ms.dist(x, y))
    q = math.ceil(math.log2(68 / g.eps))
    if i <= q - 1:
        return [x, y], ["cross"]
    j = i - q

    def side(p: int) -> Path:
        if g.nets.top_level[p] >= j:
            return [p], []
        return reachability_path(g, p, j, color)

    first, first_kinds = side(x)
    second, second_kinds = side(y)
    points, kinds = list(first), list(first_kinds)
    if first[-1] != second[-1]:
        points.append(second[-1])
        kinds.append("cross")
    points.extend(reversed(second[:-1]))
    kinds.extend(reversed(second_kinds))
    return points, kinds


def _missing_hops(spanner: Spanner, points: Sequence[int]) -> List[Tuple[int, int]]:
    return [(a, b) for a, b in zip(points, points[1:]) if (a, b) not in spanner]


def check_nets(result: BuildResult) -> List[Violation]:
    return [
        Violation("nets", f"{v.kind} at level {v.level}, color {v.color}: {v.detail}", {"points": list(v.points)})
        for v in validate_nets(result.nets, result.normalized)
    ]


def check_net_size(result: BuildResult) -> List[Violation]:
    if result.normalized.backend != "euclidean":
        return []
    return [
        Violation("net-size", v.detail, {"level": v.level, "color": v.color, "center": v.points[0]})
        for v in net_size_violations(result.nets, result.normalized, result.config.dim)
    ]


def check_mst_packing(result: BuildResult) -> List[Violation]:
    """w(MST) >= r·|S|/2 для каждой r_i-упаковки N_i^c"""
    weight = mst(result.normalized).weight
    violations = []
    for i in range(result.nets.ell + 1):
        r = result.nets.radius(i)
        for c in result.nets.colors:
            bound = r * len(result.nets.net(i, c)) / 2
            if len(result.nets.net(i, c)) > 1 and not _within(bound, weight):
                violations.append(Violation("mst-packing", f"w(MST)={weight} < {bound} at level {i}, color {c}"))
    return violations


def check_zombie_displacement(result: BuildResult) -> List[Violation]:
    g, ms = result.graph, result.normalized
    violations = []
    for key, inc in sorted(g.incubators.items()):
        z = g.zombies[key]
        bound = 2 * g.nets.radius(inc.lo)
        if not _within(ms.dist(inc.identity, z), bound):
            violations.append(Violation(
                "zombie-displacement", f"d({inc.identity}, {z}) = {ms.dist(inc.identity, z)} > {bound}",
                {"incubator": list(key), "zombie": z},
            ))
    return _capped(violations)


def check_reachability(result: BuildResult) -> List[Violation]:
    g, nets = result.graph, result.nets
    violations = []
    for i in range(1, nets.ell + 1):
        bound = 17 * nets.radius(i)
        for x in range(nets.n):
            if nets.top_level[x] >= i:
                continue
            for c in nets.colors:
                points, _ = reachability_path(g, x, i, c)
                missing = _missing_hops(result.base, points)
                length = path_length(result, points)
                if missing or not _within(length, bound) or nets.top_level[points[-1]] < i:
                    violations.append(Violation(
                        "reachability", f"level {i}, color {c}: length {length} (bound {bound}), missing {missing}",
                        {"x": x, "path": points},
                    ))
    return _capped(violations)


def check_witness_paths(result: BuildResult) -> List[Violation]:
    """Проверяет путь для каждой пары и каждого цвета, свободного от отказов"""
    nets, ms = result.nets, result.normalized
    t = 1 + result.graph.eps
    violations = []
    for x, y in itertools.combinations(range(ms.n), 2):
        for c in nets.colors:
            points, kinds = witness_path_for_color(result, x, y, c)
            inner = [p for p in points if p not in (x, y)]
            edges = [result.base.get(a, b) for a, b in zip(points, points[1:])]
            problems = []
            if any(e is None for e in edges):
                problems.append("hop outside H")
            if any(nets.color[p] != c for p in inner):
                problems.append("path leaves the surviving color")
            if not _within(path_length(result, points), t * ms.dist(x, y)):
                problems.append(f"length {path_length(result, points)} > {t} * {ms.dist(x, y)}")
            if kinds.count("foreign") > 2:
                problems.append("more than two foreign hops")
            if sum(1 for e in edges if e is not None and e.is_pure(EdgeTag.CROSS)) > 1:
                problems.append("more than one pure cross edge")
            if problems:
                violations.append(Violation("witness-path", "; ".join(problems), {"x": x, "y": y, "color": c, "path": points}))
    return _capped(violations)


def _composed_hops(result: BuildResult, points: Sequence[int], failed: Tuple[int, ...], cache: Dict) -> Tuple[float, int, List[int]]:
    """Длина и число рёбер пути в H*: рёбра из Ē заменены кратчайшими путями в H_x∖S"""
    ms = result.normalized
    t_sink = 1 + 10 * result.config.eps_prime
    length, hops, replaced = 0.0, 0, []
    for a, b in zip(points, points[1:]):
        e = result.base.get(a, b)
        if e is None:
            return math.inf, math.inf, replaced
        if e.is_skeleton:
            length += ms.dist(a, b)
            hops += 1
            continue
        head, tail = e.head, e.tail
        if (head, failed) not in cache:
            w = result.sinks[head].spanner.weight_matrix(failed)
            cache[(head, failed)] = (w, shortest_paths(w))
        w, dist = cache[(head, failed)]
        target = np.zeros(ms.n, dtype=bool)
        target[head] = True
        sub = sink_hops(w, tail, target, t_sink * ms.matrix[tail] * (1 + RELATIVE_SLACK))
        length += dist[tail, head]
        hops += sub
        replaced.append(sub)
    return length, hops, replaced


def check_composed_paths(result: BuildResult, slope: float = HOP_SLOPE, offset: float = HOP_OFFSET) -> List[Violation]:
    """
    Путь-свидетель в H₀ с рёбрами из Ē, замененными путями в спаннерах с одним стоком:
    растяжение <= (1+ε/3)², не больше трех замен, каждая не длиннее slope·log₂ n + offset рёбер.
    Отказы: пустое множество и k вершин наибольшей степени вне выжившего цвета.
    """
    nets, ms, k = result.nets, result.normalized, result.config.k
    t = (1 + result.graph.eps) ** 2
    sink_bound = slope * math.log2(max(ms.n, 2)) + offset
    degree = result.spanner.degrees()
    cache: Dict = {}
    violations = []
    for x, y in itertools.combinations(range(ms.n), 2):
        for c in nets.colors:
            points, _ = witness_path_for_color(result, x, y, c)
            others = sorted((p for p in range(ms.n) if nets.color[p] != c and p not in (x, y)), key=lambda p: (-degree[p], p))
            for failed in sorted({(), tuple(sorted(others[:k]))}):
                length, hops, replaced = _composed_hops(result, points, failed, cache)
                skeleton_hops = len(points) - 1 - len(replaced)
                problems = []
                if not _within(length, t * ms.dist(x, y)):
                    problems.append(f"length {length} > {t} * {ms.dist(x, y)}")
                if len(replaced) > 3:
                    problems.append(f"{len(replaced)} hops outside the skeleton")
                if any(h > sink_bound for h in replaced) or hops > skeleton_hops + 3 * sink_bound:
                    problems.append(f"{hops} hops (skeleton {skeleton_hops}, replaced {replaced})")
                if problems:
                    violations.append(Violation(
                        "composed-path", "; ".join(problems),
                        {"x": x, "y": y, "color": c, "failed": list(failed), "path": [int(p) for p in points]},
                    ))
    return _capped(violations)


def check_degrees(result: BuildResult) -> List[Violation]:
    cfg, base = result.config, result.base
    violations = []
    local_bound = 2 * (4 ** cfg.dim + 1)
    skeleton = base.filtered(lambda e: e.is_skeleton).degrees()
    local = base.degrees(EdgeTag.LOCAL_TREE)
    foreign_out = base.out_degrees(EdgeTag.FOREIGN)
    cross_out = base.out_degrees(EdgeTag.CROSS)
    cross_bound = (cfg.k + 1) * result.graph.gamma ** (2 * cfg.dim)
    for x in range(base.n):
        if local[x] > local_bound:
            violations.append(Violation("degrees", f"local tree degree {local[x]} > {local_bound}", {"x": x}))
        if skeleton[x] > local_bound + 6:
            violations.append(Violation("degrees", f"skeleton degree {skeleton[x]} > {local_bound + 6}", {"x": x}))
        if foreign_out[x] > cfg.k:
            violations.append(Violation("degrees", f"foreign out-degree {foreign_out[x]} > {cfg.k}", {"x": x}))
        if cross_out[x] > cross_bound:
            violations.append(Violation("degrees", f"cross out-degree {cross_out[x]} > {cross_bound}", {"x": x}))
    return _capped(violations)


def _induced_weight(result: BuildResult, a: IncubatorKey, b: IncubatorKey) -> float:
    g = result.graph
    return result.normalized.dist(g.zombies[a], g.zombies[b])


def _hops_from(source: IncubatorKey, adjacency: Dict[IncubatorKey, List[IncubatorKey]], nodes) -> Dict[IncubatorKey, int]:
    hops = {source: 0}
    queue = deque([source])
    while queue:
        current = queue.popleft()
        for nxt in adjacency.get(current, ()):
            if nxt in nodes and nxt not in hops:
                hops[nxt] = hops[current] + 1
                queue.append(nxt)
    return hops


def skeleton_hop_violations(result: BuildResult) -> List[Violation]:
    """
    Контракт сокращений: прирост степени <= 3, путь предок–потомок по скелету
    не длиннее (2⌈log₂ p_max⌉ + 1)(L + 1), вес сокращений в пределах бюджета.
    """
    g = result.graph
    shortcuts = g.of_kind(IncubatorEdgeKind.SHORTCUT)
    violations = []

    added = Counter()
    for e in shortcuts:
        added[e.a] += 1
        added[e.b] += 1
    for key, count in sorted(added.items()):
        if count > 3:
            violations.append(Violation("shortcut", f"{count} shortcut edges at one incubator", {"incubator": list(key)}))

    adjacency: Dict[IncubatorKey, List[IncubatorKey]] = {}
    for e in g.edges:
        if e.kind in (IncubatorEdgeKind.LOCAL_TREE, IncubatorEdgeKind.SHORTCUT):
            adjacency.setdefault(e.a, []).append(e.b)
            adjacency.setdefault(e.b, []).append(e.a)

    for root in result.cut.subtree_roots:
        nodes = set(g.subtree(root))
        paths = heavy_paths(g, root)
        p_max = max(len(p) for p in paths)
        heavy = {p[i]: p[i + 1] for p in paths for i in range(len(p) - 1)}
        factor = 2 * math.ceil(math.log2(p_max)) + 1

        for source in sorted(nodes):
            hops = _hops_from(source, adjacency, nodes)
            stack = [(source, 0)]
            while stack:
                current, light = stack.pop()
                for child in g.children[current]:
                    lights = light + (0 if heavy.get(current) == child else 1)
                    if hops.get(child, math.inf) > factor * (lights + 1):
                        violations.append(Violation(
                            "shortcut", f"{hops.get(child)} skeleton hops with {lights} light edges",
                            {"ancestor": list(source), "descendant": list(child)},
                        ))
                    stack.append((child, lights))

        tree_weight = sum(
            _induced_weight(result, e.a, e.b) for e in g.of_kind(IncubatorEdgeKind.LOCAL_TREE)
            if e.a in nodes and e.a != root
        )
        shortcut_weight = sum(_induced_weight(result, e.a, e.b) for e in shortcuts if e.a in nodes)
        budget = (math.ceil(math.log2(p_max)) + 1) * tree_weight
        if not _within(shortcut_weight, budget):
            violations.append(Violation(
                "shortcut", f"shortcut weight {shortcut_weight} exceeds budget {budget}", {"root": list(root)},
            ))
    return _capped(violations)


def level_weight_table(result: BuildResult) -> Dict[int, Dict[Tuple[int, int], float]]:
    """Уровень -> индуцированные пары рёбер дерева и кросс-рёбер этого уровня с весами"""
    g, ms = result.graph, result.normalized
    table: Dict[int, Dict[Tuple[int, int], float]] = {}
    for e in g.edges:
        if e.kind is IncubatorEdgeKind.SHORTCUT:
            continue
        if e.kind is IncubatorEdgeKind.LOCAL_TREE:
            u, v = g.zombies[e.a], g.zombies[e.b]
        else:
            u, v = e.a[0], e.b[0]
        if u != v:
            table.setdefault(e.level, {})[(min(u, v), max(u, v))] = ms.dist(u, v)
    return table


def level_weights(result: BuildResult, c_low: float = 4.0, c_hi: float = 200.0) -> List[Violation]:
    """Вес уровней <= σ не больше c_low·k²·w(MST), каждого уровня выше σ — c_hi·k²·w(MST)"""
    k = result.config.k
    if k == 0:
        return []
    unit = k * k * mst(result.normalized).weight
    sigma = result.cut.sigma
    table = level_weight_table(result)
    violations = []

    low: Dict[Tuple[int, int], float] = {}
    for level, pairs in table.items():
        if level <= sigma:
            low.update(pairs)
        elif not _within(sum(pairs.values()), c_hi * unit):
            violations.append(Violation("level-weights", f"level {level} weighs {sum(pairs.values())} > {c_hi * unit}"))
    if not _within(sum(low.values()), c_low * unit):
        violations.append(Violation("level-weights", f"levels <= {sigma} weigh {sum(low.values())} > {c_low * unit}"))
    return violations


def check_level_weights(result: BuildResult) -> List[Violation]:
    return level_weights(result)


def check_single_sink(result: BuildResult) -> List[Violation]:
    ms, cfg = result.normalized, result.config
    k, eps_prime = cfg.k, cfg.eps_prime
    violations = []
    for v, sink in sorted(result.sinks.items()):
        total = sum(ms.dist(p, v) for p in sink.points)
        bound = (1 + eps_prime) * (k + 1) * total
        if not _within(sink.spanner.weight, bound):
            violations.append(Violation("single-sink", f"weight {sink.spanner.weight} > {bound}", {"sink": v}))

        fanout = sink.rings.fanout
        m = sum(len(q) for q in sink.rings.portals.values())
        if m and sink.groups.depth > math.log2(m) + 2 * fanout + 2:
            violations.append(Violation("single-sink", f"group depth {sink.groups.depth} too large", {"sink": v}))

        for center, depth in sink.add_depth.items():
            size = len(sink.rings.clusters[center])
            if depth > math.ceil(math.log2(size)) + 1:
                violations.append(Violation("single-sink", f"add recursion depth {depth} for {size} points", {"sink": v}))

        degree = Counter(p for pair in sink.portal_edges for p in pair)
        for p, count in sorted(degree.items()):
            limit = (2 * fanout + 1) * (k + 1) if p == v else 3 * (k + 1)
            if count > limit:
                violations.append(Violation("single-sink", f"portal degree {count} > {limit}", {"sink": v, "point": p}))

        if ms.backend == "euclidean":
            limit = (2 ** (2 * cfg.dim + 1) + 1) * (k + 1)
            for center, pairs in sink.cluster_edges.items():
                local = Counter(p for pair in set(pairs) for p in pair)
                if local and max(local.values()) > limit:
                    violations.append(Violation("single-sink", f"cluster degree above {limit}", {"sink": v, "center": center}))
    return _capped(violations)


def _subsets(points: Sequence[int], k: int, seed: int = 0) -> List[Tuple[int, ...]]:
    count = sum(math.comb(len(points), s) for s in range(k + 1))
    if count <= settings.exhaustive_limit:
        return [s for size in range(k + 1) for s in itertools.combinations(points, size)]
    picks = sampled_sets(len(points), k, settings.sampled_trials, seed)
    return [()] + [tuple(points[i] for i in s) for s in picks]


def sink_hops(w: np.ndarray, source: int, targets: np.ndarray, bound_row: np.ndarray) -> float:
    """Наименьшее h, при котором все цели достижимы из source путём длины <= bound_row за h рёбер"""
    best = w[source].copy()

    def satisfied() -> bool:
        return bool(np.all(~targets | (np.isfinite(best) & (best <= bound_row))))

    for h in range(1, w.shape[0]):
        if satisfied():
            return h
        best = np.minimum(best, np.min(best[:, None] + w, axis=0))
    return w.shape[0] - 1 if satisfied() else math.inf


def check_sink_stretch(result: BuildResult, slope: float = HOP_SLOPE, offset: float = HOP_OFFSET) -> List[Violation]:
    """dist(v, x) в H_v∖S не больше (1+10ε′)·d(v, x) за не более slope·log₂ n + offset рёбер"""
    ms, cfg = result.normalized, result.config
    t = 1 + 10 * cfg.eps_prime
    hop_bound = slope * math.log2(max(ms.n, 2)) + offset
    violations = []
    for v, sink in sorted(result.sinks.items()):
        base = sink.spanner.weight_matrix()
        others = [p for p in sink.points if p != v]
        for failed in _subsets(others, cfg.k, cfg.seed):
            w = base.copy()
            idx = list(failed)
            w[idx, :] = np.inf
            w[:, idx] = np.inf
            targets = np.zeros(ms.n, dtype=bool)
            targets[[p for p in others if p not in failed]] = True
            if not targets.any():
                continue
            hops = sink_hops(w, v, targets, t * ms.matrix[v] * (1 + RELATIVE_SLACK))
            if hops > hop_bound:
                violations.append(Violation(
                    "sink-stretch", "no t-path" if math.isinf(hops) else f"{hops} hops > {hop_bound:.1f}",
                    {"sink": v, "failed": list(failed)},
                ))
    return _capped(violations)


def cluster_path_violations(result: BuildResult) -> List[Violation]:
    """Из кластера радиуса r каждая уцелевшая точка достижима из уцелевшего портала путём <= 4r"""
    ms, k = result.normalized, result.config.k
    violations = []
    for v, sink in sorted(result.sinks.items()):
        for center, cluster in sorted(sink.rings.clusters.items()):
            portals = sink.rings.portals[center]
            radius = sink.rings.cluster_radius(center)
            pos = {p: i for i, p in enumerate(cluster)}
            w = np.full((len(cluster), len(cluster)), np.inf)
            np.fill_diagonal(w, 0.0)
            for a, b in sink.cluster_edges[center]:
                w[pos[a], pos[b]] = w[pos[b], pos[a]] = ms.dist(a, b)
            for failed in _subsets(list(cluster), k):
                local = w.copy()
                idx = [pos[p] for p in failed]
                local[idx, :] = np.inf
                local[:, idx] = np.inf
                dist = shortest_paths(local)
                alive = [pos[q] for q in portals if q not in failed]
                for x in cluster:
                    if x in failed:
                        continue
                    best = min((dist[q, pos[x]] for q in alive), default=math.inf)
                    if not _within(best, 4 * radius):
                        violations.append(Violation(
                            "cluster-paths", f"portal distance {best} > {4 * radius}",
                            {"sink": v, "center": center, "x": x, "failed": list(failed)},
                        ))
    return _capped(violations)


CHECKS: Dict[str, Callable[[BuildResult], List[Violation]]] = {
    "nets": check_nets,
    "net-size": check_net_size,
    "mst-packing": check_mst_packing,
    "zombie-displacement": check_zombie_displacement,
    "reachability": check_reachability,
    "witness-path": check_witness_paths,
    "composed-path": check_composed_paths,
    "degrees": check_degrees,
    "shortcut": skeleton_hop_violations,
    "level-weights": check_level_weights,
    "single-sink": check_single_sink,
    "sink-stretch": check_sink_stretch,
    "cluster-paths": cluster_path_violations,
}


def run_checks(result: BuildResult, names: Optional[Sequence[str]] = None) -> List[Violation]:
    """Запускает выбранные (по умолчанию все) проверки"""
    violations: List[Violation] = []
    for name in names or sorted(CHECKS):
        found = CHECKS[name](result)
        logger.info("check %s: %d violations", name, len(found))
        violations.extend(found)
    return violations
