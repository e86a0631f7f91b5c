#!/usr/bin/env python3
"""
Калибровочные прогоны для констант, зафиксированных в tests/e2e/constants.py.

Печатает измеренные максимумы: лёгкость / (k³·log₂ n), степень / k²,
хоп-диаметр против log₂ n и вес уровней выше σ / (k²·w(MST)).
"""

import math
import os
import sys

# Добавляем корневую директорию проекта в sys.path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from app.application.use_cases.generate import generate_points  # noqa: E402
from app.config import BuildConfig  # noqa: E402
from app.domain.entities.metric_space import MetricSpace  # noqa: E402
from app.domain.services.assembly import build_spanner  # noqa: E402
from app.domain.services.checks import level_weight_table  # noqa: E402
from app.domain.services.metric import mst  # noqa: E402
from app.domain.services.verify import degree_census, hop_bounded_stretch, lightness  # noqa: E402


def calibrate(seeds=range(5)):
    worst = {"lightness": 0.0, "degree": 0.0, "hops": 0.0, "level": 0.0}
    for n in (16, 32, 64):
        for k in (1, 2):
            for eps in (0.25, 0.4):
                for seed in seeds:
                    ms = MetricSpace.from_points(generate_points("uniform-cube", n, 2, seed))
                    result = build_spanner(ms, BuildConfig(eps=eps, k=k, dim=2.0, seed=seed))
                    spanner = result.spanner

                    worst["lightness"] = max(worst["lightness"], lightness(spanner, ms) / (k ** 3 * math.log2(n)))
                    worst["degree"] = max(worst["degree"], degree_census(spanner)[0] / k ** 2)
                    hops, _ = hop_bounded_stretch(spanner, ms, 1 + eps)
                    worst["hops"] = max(worst["hops"], hops - 3 * math.log2(n))
                    if n <= 32:
                        unit = k * k * mst(result.normalized).weight
                        for level, pairs in level_weight_table(result).items():
                            if level > result.cut.sigma:
                                worst["level"] = max(worst["level"], sum(pairs.values()) / unit)
                    print(f"✅ n={n} k={k} eps={eps} seed={seed}: {len(spanner)} edges")
    return worst


def main():
    worst = calibrate()
    print("\nИзмеренные максимумы:")
    print(f"  lightness / (k^3 log2 n)   = {worst['lightness']:.3f}")
    print(f"  max degree / k^2           = {worst['degree']:.3f}")
    print(f"  hop diameter - 3 log2 n    = {worst['hops']:.3f}")
    print(f"  level weight / (k^2 w(MST)) = {worst['level']:.3f}")


if __name__ == "__main__":
    main()
