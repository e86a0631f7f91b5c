import logging
import math
from typing import List, Tuple

import numpy as np

from app.domain.entities.metric_space import MetricSpace, MstResult
from app.domain.exceptions import DuplicatePointError, InvalidParameterError

logger = logging.getLogger(__name__)


def min_distance(ms: MetricSpace) -> Tuple[float, Tuple[int, int]]:
    """Минимальное расстояние между различными точками и пара-свидетель (наименьшие индексы)"""
    d = np.array(ms.matrix, copy=True)
    np.fill_diagonal(d, np.inf)
    flat = int(np.argmin(d))
    i, j = divmod(flat, ms.n)
    return float(d[i, j]), (min(i, j), max(i, j))


def normalize(ms: MetricSpace) -> Tuple[MetricSpace, float]:
    """
    Масштабирует пространство так, чтобы минимальное расстояние стало равно 2.

    Returns:
        (нормализованное пространство, масштаб 2 / min d)
    """
    if ms.n < 2:
        raise InvalidParameterError("normalization needs at least two points")
    if not np.all(np.isfinite(ms.matrix)):
        raise InvalidParameterError("all distances must be finite")
    smallest, pair = min_distance(ms)
    if smallest <= 0:
        raise DuplicatePointError(pair)
    # пересчёт расстояний после масштабирования может сдвинуть минимум на несколько ulp
    if math.isclose(smallest, 2.0, rel_tol=1e-12):
        return ms, 1.0
    scale = 2.0 / smallest
    logger.debug("normalizing %d points by scale %r", ms.n, scale)
    return ms.scaled(scale), scale


def diameter(ms: MetricSpace) -> float:
    if ms.n <= 1:
        return 0.0
    return float(np.max(ms.matrix))


def mst(ms: MetricSpace) -> MstResult:
    """Точное MST полного графа расстояний, плотный алгоритм Прима O(n²)"""
    n = ms.n
    if n <= 1:
        return MstResult(edges=(), weight=0.0)
    d = ms.matrix
    in_tree = np.zeros(n, dtype=bool)
    best = np.full(n, np.inf)
    link = np.zeros(n, dtype=np.int64)
    in_tree[0] = True
    best[:] = d[0]
    edges: List[Tuple[int, int]] = []
    weight = 0.0
    for _ in range(n - 1):
        candidates = np.where(in_tree, np.inf, best)
        x = int(np.argmin(candidates))
        edges.append((min(x, int(link[x])), max(x, int(link[x]))))
        weight += float(best[x])
        in_tree[x] = True
        closer = (~in_tree) & (d[x] < best)
        best[closer] = d[x][closer]
        link[closer] = x
    return MstResult(edges=tuple(edges), weight=weight)


def triangle_violations(ms: MetricSpace, limit: int = 10) -> List[Tuple[int, int, int]]:
    """Тройки (i, j, l) с d(i,l) > d(i,j) + d(j,l); O(n³), только для явных матриц"""
    d = ms.matrix
    found: List[Tuple[int, int, int]] = []
    for j in range(ms.n):
        bad = d > (d[:, j][:, None] + d[j, :][None, :]) * (1 + 1e-12)
        for i, l in zip(*np.nonzero(bad)):
            found.append((int(i), j, int(l)))
            if len(found) >= limit:
                return found
    return found


def validate_matrix(ms: MetricSpace, check_triangle: bool = False) -> None:
    """Проверяет симметрию, нулевую диагональ и (опционально) неравенство треугольника"""
    d = ms.matrix
    if not np.array_equal(d, d.T):
        raise InvalidParameterError("distance matrix is not symmetric")
    if np.any(np.diag(d) != 0):
        raise InvalidParameterError("distance matrix must have a zero diagonal")
    if np.any(d < 0):
        raise InvalidParameterError("distances must be non-negative")
    if ms.n >= 2:
        smallest, pair = min_distance(ms)
        if smallest <= 0:
            raise DuplicatePointError(pair)
    if check_triangle:
        bad = triangle_violations(ms, limit=1)
        if bad:
            i, j, l = bad[0]
            raise InvalidParameterError(f"triangle inequality fails for points {i}, {j}, {l}")
