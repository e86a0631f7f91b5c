import logging
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List

from app.config import BuildConfig
from app.domain.entities.incubator import IncubatorGraph
from app.domain.entities.metric_space import MetricSpace
from app.domain.entities.nets import ColoredNets
from app.domain.entities.spanner import Spanner
from app.domain.exceptions import InvalidParameterError
from app.domain.services.hnets import build_nets
from app.domain.services.incubator import assign_zombies, build_incubator_graph, direct_edges, induce_spanner
from app.domain.services.metric import diameter, normalize
from app.domain.services.shortcut import SigmaCut, compute_sigma, shortcut_trees
from app.domain.services.single_sink import SingleSinkSpanner, build_vftsss

logger = logging.getLogger(__name__)


@dataclass
class BuildResult:
    """
    Итог построения.

    spanner — H* в исходных единицах; остальные поля относятся к
    нормализованному пространству normalized и нужны проверкам.
    """

    spanner: Spanner
    base: Spanner
    graph: IncubatorGraph
    nets: ColoredNets
    cut: SigmaCut
    config: BuildConfig
    metric: MetricSpace
    normalized: MetricSpace
    scale: float
    sinks: Dict[int, SingleSinkSpanner] = field(default_factory=dict)
    build_millis: float = 0.0

    @property
    def skeleton(self) -> Spanner:
        return self.base.filtered(lambda e: e.is_skeleton)

    @property
    def in_stars(self) -> Dict[int, List[int]]:
        """x -> хвосты несклетных рёбер, направленных в x"""
        stars: Dict[int, List[int]] = defaultdict(list)
        for e in self.base:
            if not e.is_skeleton:
                stars[e.head].append(e.tail)
        return {x: sorted(tails) for x, tails in sorted(stars.items())}


def build_spanner(ms: MetricSpace, cfg: BuildConfig) -> BuildResult:
    """
    Строит k-отказоустойчивый (1+eps)-спаннер H*.

    H₀ строится с параметром eps/3; звёзды входящих несклетных рёбер
    заменяются спаннерами с единственным стоком (eps' = eps/30).
    """
    started = time.perf_counter()
    if not 0 <= cfg.k <= ms.n - 2:
        raise InvalidParameterError(f"fault parameter must satisfy 0 <= k <= n - 2 (k={cfg.k}, n={ms.n})")
    normalized, scale = normalize(ms)

    nets = build_nets(normalized, cfg.k)
    graph = assign_zombies(build_incubator_graph(nets, normalized, cfg.eps0))
    cut = compute_sigma(cfg.k, diameter(normalized), normalized.n, graph.gamma, graph)
    graph = shortcut_trees(graph, cut)
    base = direct_edges(induce_spanner(graph, normalized), nets)

    result = BuildResult(
        spanner=Spanner(ms.n), base=base, graph=graph, nets=nets, cut=cut, config=cfg,
        metric=ms, normalized=normalized, scale=scale,
    )
    combined = result.skeleton
    for x, tails in result.in_stars.items():
        sink = build_vftsss(normalized, tails + [x], x, cfg.k, cfg.eps_prime, cfg.dim)
        result.sinks[x] = sink
        combined = combined.merged(sink.spanner)
    logger.info("replaced %d in-stars with single-sink spanners", len(result.sinks))

    result.spanner = combined.reweighted(ms)
    result.build_millis = (time.perf_counter() - started) * 1000.0
    logger.info(
        "built spanner: n=%d k=%d eps=%s edges=%d in %.1f ms",
        ms.n, cfg.k, cfg.eps, len(result.spanner), result.build_millis,
    )
    return result
