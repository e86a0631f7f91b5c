from functools import lru_cache

from app.application.use_cases.generate import generate_points
from app.config import BuildConfig
from app.domain.entities.metric_space import MetricSpace
from app.domain.services.assembly import BuildResult, build_spanner


def points(kind: str, n: int, seed: int = 0) -> MetricSpace:
    return MetricSpace.from_points(generate_points(kind, n, 2, seed))


@lru_cache(maxsize=64)
def built(kind: str, n: int, k: int, eps: float, seed: int = 0) -> BuildResult:
    """Кэш построений: одни и те же экземпляры используются несколькими проверками"""
    return build_spanner(points(kind, n, seed), BuildConfig.create(eps=eps, k=k, seed=seed))
