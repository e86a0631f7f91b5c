import logging
from typing import List, Optional, Sequence, Tuple

from app.config import BuildConfig
from app.domain.entities.metric_space import MetricSpace
from app.domain.entities.report import VerificationReport
from app.domain.entities.spanner import Spanner
from app.domain.exceptions import InputMismatchError, InvalidParameterError
from app.domain.services.assembly import build_spanner
from app.domain.services.checks import CHECKS, run_checks
from app.domain.services.hnets import build_nets
from app.domain.services.metric import normalize
from app.domain.services.verify import run_all

logger = logging.getLogger(__name__)


def color_failure_sets(ms: MetricSpace, k: int) -> List[Tuple[int, ...]]:
    """Для каждого цвета — k его точек с наибольшим уровнем в иерархии сетей"""
    if k == 0 or not 0 <= k <= ms.n - 2:
        return []
    nets = build_nets(normalize(ms)[0], k)
    sets = []
    for c in nets.colors:
        members = [x for x in range(ms.n) if nets.color[x] == c]
        members.sort(key=lambda x: (-nets.top_level[x], x))
        sets.append(tuple(sorted(members[:k])))
    return sets


def verify_spanner(
    spanner: Spanner,
    ms: MetricSpace,
    cfg: BuildConfig,
    mode: str = "auto",
    trials: Optional[int] = None,
    seed: int = 0,
    jobs: Optional[int] = None,
    checks: Sequence[str] = (),
) -> VerificationReport:
    """
    Проверяет спаннер оракулами; именованные проверки требуют
    детерминированной перестройки по тем же параметрам.
    """
    if spanner.n != ms.n:
        raise InputMismatchError(f"spanner has {spanner.n} vertices but the point file has {ms.n} points")
    unknown = [name for name in checks if name not in CHECKS]
    if unknown:
        raise InvalidParameterError(f"unknown checks: {', '.join(unknown)} (available: {', '.join(sorted(CHECKS))})")

    report = run_all(
        spanner, ms, cfg.k, cfg.eps, mode=mode, trials=trials, seed=seed, jobs=jobs,
        extra_sets=color_failure_sets(ms, cfg.k),
    )
    if checks:
        report.violations.extend(run_checks(build_spanner(ms, cfg), list(checks)))
    logger.info("verification finished: %s", "ok" if report.ok else f"{len(report.violations)} violations")
    return report
