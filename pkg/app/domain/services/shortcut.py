import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from app.domain.entities.incubator import IncubatorEdge, IncubatorEdgeKind, IncubatorGraph, IncubatorKey

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SigmaCut:
    r_hat: float
    sigma: int
    subtree_roots: Tuple[IncubatorKey, ...] = ()

    @property
    def active(self) -> bool:
        return self.sigma >= 0


def floor_log2(value: float) -> int:
    """Точный ⌊log₂ value⌋ через разложение мантиссы; -1 для нуля"""
    if value <= 0:
        return -1
    mantissa, exponent = math.frexp(value)
    return exponent - 1


def compute_sigma(k: int, delta: float, n: int, gamma: float, graph: Optional[IncubatorGraph] = None) -> SigmaCut:
    """
    r̂ = k²Δ/(n²γ), σ = ⌊log₂ r̂⌋.

    Корни поддеревьев — инкубаторы, чей интервал уровней содержит min(σ, ℓ).
    """
    r_hat = (k * k * delta) / (n * n * gamma)
    sigma = floor_log2(r_hat)
    roots: Tuple[IncubatorKey, ...] = ()
    if graph is not None and sigma >= 0:
        level = min(sigma, graph.nets.ell)
        roots = tuple(sorted({graph.level_index[(x, level)] for x in graph.nets.level_members(level)}))
    logger.info("sigma cut: r_hat=%.6g sigma=%d, %d subtree roots", r_hat, sigma, len(roots))
    return SigmaCut(r_hat=r_hat, sigma=sigma, subtree_roots=roots)


def leaf_counts(g: IncubatorGraph, root: IncubatorKey) -> Dict[IncubatorKey, int]:
    order = g.subtree(root)
    counts: Dict[IncubatorKey, int] = {}
    for key in reversed(order):
        kids = g.children[key]
        counts[key] = sum(counts[c] for c in kids) if kids else 1
    return counts


def heavy_paths(g: IncubatorGraph, root: IncubatorKey) -> List[List[IncubatorKey]]:
    """
    Разбиение поддерева на тяжёлые пути (сверху вниз).

    Тяжёлый ребёнок — с наибольшим числом листьев, при равенстве — с меньшей identity.
    """
    counts = leaf_counts(g, root)
    paths: List[List[IncubatorKey]] = []
    heads = [root]
    while heads:
        current = heads.pop()
        path = [current]
        while g.children[current]:
            ranked = sorted(g.children[current], key=lambda c: (-counts[c], c))
            heads.extend(reversed(ranked[1:]))
            current = ranked[0]
            path.append(current)
        paths.append(path)
    return sorted(paths)


def balanced_links(p: int) -> List[Tuple[int, int]]:
    """
    Рёбра неявного сбалансированного дерева поиска над позициями 0..p-1.

    Возвращает пары (родитель, ребёнок) с разницей позиций больше 1;
    соседние позиции уже соединены рёбрами пути.
    """
    links: List[Tuple[int, int]] = []
    stack: List[Tuple[int, int, Optional[int]]] = [(0, p - 1, None)]
    while stack:
        lo, hi, up = stack.pop()
        if lo > hi:
            continue
        mid = (lo + hi) // 2
        if up is not None and abs(up - mid) > 1:
            links.append((up, mid))
        stack.append((lo, mid - 1, mid))
        stack.append((mid + 1, hi, mid))
    return sorted(links)


def shortcut_trees(g: IncubatorGraph, cut: SigmaCut) -> IncubatorGraph:
    """Добавляет рёбра SHORTCUT вдоль тяжёлых путей каждого поддерева ниже σ"""
    result = g.copy()
    if not cut.active:
        return result
    added = 0
    for root in cut.subtree_roots:
        for path in heavy_paths(g, root):
            for up, down in balanced_links(len(path)):
                # a — более глубокий инкубатор, как у рёбер дерева
                result.edges.append(IncubatorEdge(IncubatorEdgeKind.SHORTCUT, path[max(up, down)], path[min(up, down)]))
                added += 1
    logger.info("shortcut %d subtrees with %d edges", len(cut.subtree_roots), added)
    return result
