import logging
import math
from typing import List

import numpy as np

from app.domain.entities.metric_space import MetricSpace
from app.domain.entities.nets import ColoredNets, NetViolation
from app.domain.exceptions import InvalidParameterError
from app.domain.services.metric import diameter

logger = logging.getLogger(__name__)


def top_level_count(delta: float) -> int:
    """ell = ceil(log2 Δ) для нормализованного пространства"""
    return max(1, math.ceil(math.log2(delta)))


def build_nets(ms: MetricSpace, k: int) -> ColoredNets:
    """
    Строит отказоустойчивые иерархические сети сверху вниз.

    Уровень ell засеивается точками 0..k (по одной на цвет). Далее для
    каждого уровня i = ell-1..0 и цвета c = 0..k сеть N_{i+1}^c жадно
    дополняется до r_i-сети неокрашенных точек в порядке возрастания индекса.
    """
    n = ms.n
    if not 0 <= k <= n - 2:
        raise InvalidParameterError(f"fault parameter must satisfy 0 <= k <= n - 2 (k={k}, n={n})")
    d = ms.matrix
    ell = top_level_count(diameter(ms))
    color = np.full(n, -1, dtype=np.int64)

    nets: List[List[List[int]]] = [[[] for _ in range(k + 1)] for _ in range(ell + 1)]
    for c in range(k + 1):
        nets[ell][c] = [c]
        color[c] = c

    for i in range(ell - 1, -1, -1):
        r = ColoredNets.radius(i)
        for c in range(k + 1):
            members = list(nets[i + 1][c])
            for x in range(n):
                if color[x] != -1:
                    continue
                if all(d[x, m] > r for m in members):
                    members.append(x)
                    color[x] = c
            nets[i][c] = sorted(members)
        logger.debug("level %d: |N_i| = %d", i, sum(len(net) for net in nets[i]))

    result = ColoredNets(
        k=k, ell=ell, n=n,
        members=tuple(tuple(tuple(net) for net in level) for level in nets),
    )
    logger.info("built %d colored net hierarchies over %d points, %d levels", k + 1, n, ell + 1)
    return result


def validate_nets(nets: ColoredNets, ms: MetricSpace) -> List[NetViolation]:
    """Полный перебор свойств вложенности, упаковки и покрытия; пустой список — успех"""
    d = ms.matrix
    violations: List[NetViolation] = []

    owners = [[c for c in nets.colors if x in set(nets.net(0, c))] for x in range(nets.n)]
    for x, cs in enumerate(owners):
        if len(cs) != 1:
            violations.append(NetViolation("coloring", 0, -1, (x,), f"point belongs to colors {cs}"))

    tops = [nets.net(nets.ell, c) for c in nets.colors]
    for c, net in enumerate(tops):
        if len(net) != 1:
            violations.append(NetViolation("top", nets.ell, c, tuple(net), "top net must be a single point"))
    seeds = [net[0] for net in tops if len(net) == 1]
    if len(set(seeds)) != len(seeds):
        violations.append(NetViolation("top", nets.ell, -1, tuple(seeds), "top points must be distinct"))

    for i in range(nets.ell + 1):
        r = nets.radius(i)
        for c in nets.colors:
            net = nets.net(i, c)
            for x in net:
                if owners[x] != [c]:
                    violations.append(NetViolation("coloring", i, c, (x,), "net point of another color"))
            if i < nets.ell:
                missing = set(nets.net(i + 1, c)) - set(net)
                for x in sorted(missing):
                    violations.append(NetViolation("nesting", i, c, (x,), f"in N_{i + 1} but not in N_{i}"))
            for a_pos, a in enumerate(net):
                for b in net[a_pos + 1:]:
                    if not d[a, b] > r:
                        violations.append(NetViolation("packing", i, c, (a, b), f"distance {d[a, b]!r} <= {r}"))

        if i == 0:
            continue
        level = set(nets.level_members(i))
        for x in range(nets.n):
            if x in level:
                continue
            for c in nets.colors:
                net = nets.net(i, c)
                if not net or not np.min(d[x, list(net)]) <= r:
                    violations.append(NetViolation("covering", i, c, (x,), f"no color-{c} net point within {r}"))
    return violations


def net_size_violations(nets: ColoredNets, ms: MetricSpace, dim: float, factors=(2, 4)) -> List[NetViolation]:
    """
    Оценка размера сетей: число точек N_i^c в шаре радиуса R = f·r_i вокруг
    любой входной точки не превышает (R / r_i)^(2·dim).
    """
    d = ms.matrix
    violations: List[NetViolation] = []
    for i in range(nets.ell + 1):
        r = nets.radius(i)
        for c in nets.colors:
            net = list(nets.net(i, c))
            if not net:
                continue
            sub = d[:, net]
            for f in factors:
                bound = float(f) ** (2 * dim)
                counts = np.count_nonzero(sub <= f * r, axis=1)
                worst = int(np.argmax(counts))
                if counts[worst] > bound:
                    violations.append(NetViolation(
                        "size", i, c, (worst,), f"{int(counts[worst])} net points within {f}·r_{i} > {bound}",
                    ))
    return violations
