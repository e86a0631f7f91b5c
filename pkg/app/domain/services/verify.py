"""
Независимые оракулы проверки спаннеров.

Модуль не использует код построения: только MetricSpace, Spanner и MST.
"""
import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.config import settings
from app.domain.entities.metric_space import MetricSpace
from app.domain.entities.report import StretchWitness, VerificationReport, Violation
from app.domain.entities.spanner import EdgeTag, Spanner
from app.domain.exceptions import InvalidParameterError
from app.domain.services.metric import mst

logger = logging.getLogger(__name__)

# допуск на округление сумм вдоль пути
RELATIVE_SLACK = 1e-12
MAX_REPORTED = 20

FailureSet = Tuple[int, ...]


def shortest_paths(w: np.ndarray) -> np.ndarray:
    """Флойд–Уоршелл на плотной матрице весов"""
    dist = np.array(w, dtype=np.float64, copy=True)
    for m in range(dist.shape[0]):
        np.minimum(dist, dist[:, m, None] + dist[None, m, :], out=dist)
    return dist


def _isolate(w: np.ndarray, failed: Sequence[int]) -> np.ndarray:
    w = w.copy()
    if failed:
        idx = list(failed)
        w[idx, :] = np.inf
        w[:, idx] = np.inf
        np.fill_diagonal(w, 0.0)
    return w


def _alive_pairs(n: int, failed: Sequence[int]) -> np.ndarray:
    alive = np.ones(n, dtype=bool)
    alive[list(failed)] = False
    return np.triu(np.outer(alive, alive), k=1)


def _stretch_for(w: np.ndarray, d: np.ndarray, t: float, failed: FailureSet):
    """(failed, худшее отношение, x, y, первая нарушающая пара или None)"""
    mask = _alive_pairs(d.shape[0], failed)
    if not mask.any():
        return failed, 1.0, -1, -1, None
    dist = shortest_paths(_isolate(w, failed))
    ratio = np.where(mask, dist / np.where(mask, d, 1.0), -np.inf)
    x, y = divmod(int(np.argmax(ratio)), d.shape[0])
    bad = np.argwhere(ratio > t * (1 + RELATIVE_SLACK))
    first_bad = None
    if len(bad):
        bx, by = (int(v) for v in bad[0])
        first_bad = (bx, by, float(ratio[bx, by]))
    return failed, float(ratio[x, y]), x, y, first_bad


def _evaluate_chunk(w: np.ndarray, d: np.ndarray, t: float, sets: List[FailureSet]):
    return [_stretch_for(w, d, t, s) for s in sets]


def exhaustive_sets(n: int, k: int) -> List[FailureSet]:
    return [s for size in range(k + 1) for s in itertools.combinations(range(n), size)]


def sampled_sets(n: int, k: int, trials: int, seed: int) -> List[FailureSet]:
    rng = np.random.default_rng(seed)
    size = min(k, n)
    return [tuple(sorted(int(v) for v in rng.choice(n, size=size, replace=False))) for _ in range(trials)]


def top_degree_set(s: Spanner, k: int) -> FailureSet:
    degrees = s.degrees()
    order = np.lexsort((np.arange(s.n), -degrees))
    return tuple(sorted(int(v) for v in order[:k]))


def failure_sets(
    s: Spanner,
    k: int,
    mode: str = "auto",
    trials: Optional[int] = None,
    seed: int = 0,
    extra_sets: Iterable[Sequence[int]] = (),
    exhaustive_limit: Optional[int] = None,
) -> Tuple[str, List[FailureSet]]:
    """
    Множества отказов для проверки.

    auto — перебор, если C(n, k) не превышает exhaustive_limit, иначе выборка
    с эвристиками (k вершин наибольшей степени и extra_sets).
    """
    limit = settings.exhaustive_limit if exhaustive_limit is None else exhaustive_limit
    if mode == "auto":
        mode = "exhaustive" if math.comb(s.n, k) <= limit else "sampled"
    if mode == "exhaustive":
        return mode, exhaustive_sets(s.n, k)
    if mode != "sampled":
        raise InvalidParameterError(f"unknown verification mode: {mode}")
    trials = settings.sampled_trials if trials is None else trials
    sets = {(), top_degree_set(s, k)}
    sets.update(tuple(sorted(set(extra)))[:k] for extra in extra_sets)
    sets.update(sampled_sets(s.n, k, trials, seed))
    return mode, sorted(sets, key=lambda fs: (len(fs), fs))


def fault_stretch(
    s: Spanner,
    ms: MetricSpace,
    k: int,
    t: float,
    mode: str = "auto",
    trials: Optional[int] = None,
    seed: int = 0,
    jobs: Optional[int] = None,
    extra_sets: Iterable[Sequence[int]] = (),
    exhaustive_limit: Optional[int] = None,
) -> VerificationReport:
    """
    Максимальное растяжение H∖S по множествам отказов |S| <= k.

    Несвязная пара — нарушение с бесконечным отношением.
    """
    if s.n != ms.n:
        raise InvalidParameterError(f"spanner has {s.n} vertices, metric has {ms.n} points")
    mode, sets = failure_sets(s, k, mode, trials, seed, extra_sets, exhaustive_limit)
    w, d = s.weight_matrix(), ms.matrix
    jobs = settings.jobs if jobs is None else jobs

    if jobs > 1 and len(sets) > 1:
        size = math.ceil(len(sets) / jobs)
        chunks = [sets[i:i + size] for i in range(0, len(sets), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = [r for chunk in pool.map(partial(_evaluate_chunk, w, d, t), chunks) for r in chunk]
    else:
        outcomes = _evaluate_chunk(w, d, t, sets)

    report = VerificationReport(mode=mode, failure_sets=len(sets))
    worst = None
    for failed, ratio, x, y, first_bad in outcomes:
        if x < 0:
            continue
        key = (-ratio, failed, x, y)
        if worst is None or key < worst:
            worst = key
        if first_bad is not None and len(report.violations) < MAX_REPORTED:
            bx, by, bad_ratio = first_bad
            detail = "disconnected" if math.isinf(bad_ratio) else f"stretch {bad_ratio:.6f} exceeds {t}"
            report.violations.append(Violation(
                check="stretch", detail=detail,
                witness={"failed": list(failed), "x": bx, "y": by},
            ))
    if worst is not None:
        ratio, failed, x, y = -worst[0], worst[1], worst[2], worst[3]
        report.max_stretch = ratio
        report.witness = StretchWitness(failed=failed, x=x, y=y, ratio=ratio)
    logger.info(
        "fault stretch (%s, %d sets): max %.6f, %d violations",
        mode, len(sets), report.max_stretch, len(report.violations),
    )
    return report


def hop_bounded_stretch(
    s: Spanner, ms: MetricSpace, t: float, failed: Sequence[int] = (),
) -> Tuple[float, Optional[Tuple[int, int]]]:
    """
    Минимальное h, при котором у каждой пары есть t-путь из не более чем h рёбер.

    Послойная релаксация (min-plus); недостижимая пара — (inf, пара).
    """
    if t < 1:
        raise InvalidParameterError("t must be at least 1")
    w = _isolate(s.weight_matrix(), failed)
    mask = _alive_pairs(s.n, failed)
    if not mask.any():
        return 0, None
    target = t * ms.matrix * (1 + RELATIVE_SLACK)
    current = w
    for h in range(1, s.n):
        bad = mask & (current > target)
        if not bad.any():
            return h, None
        current = np.min(current[:, :, None] + w[None, :, :], axis=1)
    bad = np.argwhere(mask & (current > target))
    if not len(bad):
        return s.n - 1, None
    x, y = (int(v) for v in bad[0])
    return math.inf, (x, y)


def degree_census(s: Spanner) -> Tuple[int, Dict[str, int]]:
    def top(values: np.ndarray) -> int:
        return int(values.max()) if values.size else 0

    return top(s.degrees()), {tag.value: top(s.degrees(tag)) for tag in EdgeTag}


def lightness(s: Spanner, ms: MetricSpace) -> float:
    """w(H) / w(MST)"""
    tree = mst(ms).weight
    if tree == 0:
        return 1.0
    return s.weight / tree


def run_all(
    s: Spanner,
    ms: MetricSpace,
    k: int,
    eps: float,
    mode: str = "auto",
    trials: Optional[int] = None,
    seed: int = 0,
    jobs: Optional[int] = None,
    extra_sets: Iterable[Sequence[int]] = (),
) -> VerificationReport:
    """Растяжение при отказах, хоп-диаметр при t = 1+eps, степени и лёгкость"""
    t = 1 + eps
    report = fault_stretch(s, ms, k, t, mode, trials, seed, jobs, extra_sets)
    hops, pair = hop_bounded_stretch(s, ms, t)
    report.hop_stretch = t
    report.hop_diameter = hops
    if pair is not None and not any(v.check == "stretch" for v in report.violations):
        report.violations.append(Violation("hops", "pair unreachable", {"x": pair[0], "y": pair[1]}))
    report.max_degree, report.degree_by_tag = degree_census(s)
    report.lightness = lightness(s, ms)
    return report
