import logging
from typing import Any, Dict, Tuple

from app.config import BuildConfig
from app.domain.entities.metric_space import MetricSpace
from app.domain.entities.spanner import Spanner
from app.domain.services.assembly import BuildResult, build_spanner
from app.domain.services.verify import degree_census, hop_bounded_stretch, lightness

logger = logging.getLogger(__name__)


def spanner_stats(spanner: Spanner, ms: MetricSpace, cfg: BuildConfig, build_millis: float) -> Dict[str, Any]:
    """Статистика в формате JSON (schema 1)"""
    max_degree, by_tag = degree_census(spanner)
    hop_stretch = 1 + cfg.eps
    hops, _ = hop_bounded_stretch(spanner, ms, hop_stretch)
    return {
        "schema": 1,
        "n": ms.n,
        "k": cfg.k,
        "eps": cfg.eps,
        "edges": len(spanner),
        "maxDegree": max_degree,
        "degreeByTag": by_tag,
        "lightness": lightness(spanner, ms),
        "hopStretch": hop_stretch,
        "hopDiameter": None if hops == float("inf") else int(hops),
        "buildMillis": round(build_millis, 3),
    }


def build_with_stats(ms: MetricSpace, cfg: BuildConfig) -> Tuple[BuildResult, Dict[str, Any]]:
    result = build_spanner(ms, cfg)
    return result, spanner_stats(result.spanner, ms, cfg, result.build_millis)
