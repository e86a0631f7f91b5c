from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Tuple


@dataclass(frozen=True)
class ColoredNets:
    """
    k+1 цветных иерархий сетей N_i^c.

    members[i][c] — отсортированный кортеж точек N_i^c, уровни 0..ell,
    цвета 0..k. Радиус уровня r_i = 2^i.
    """

    k: int
    ell: int
    n: int
    members: Tuple[Tuple[Tuple[int, ...], ...], ...]

    @staticmethod
    def radius(level: int) -> float:
        return 2.0 ** level

    @property
    def colors(self) -> range:
        return range(self.k + 1)

    def net(self, level: int, color: int) -> Tuple[int, ...]:
        return self.members[level][color]

    @cached_property
    def color(self) -> Tuple[int, ...]:
        """Цвет каждой точки по N_0^c (-1, если точка не окрашена)"""
        result = [-1] * self.n
        for c in self.colors:
            for x in self.members[0][c]:
                result[x] = c
        return tuple(result)

    @cached_property
    def top_level(self) -> Tuple[int, ...]:
        """i*(x): наивысший уровень, на котором x — точка сети"""
        result = [-1] * self.n
        for i, level in enumerate(self.members):
            for net in level:
                for x in net:
                    result[x] = max(result[x], i)
        return tuple(result)

    def level_members(self, level: int) -> Tuple[int, ...]:
        """N_i — объединение сетей всех цветов на уровне i"""
        return tuple(sorted(x for net in self.members[level] for x in net))

    def to_debug_json(self) -> Dict[str, Dict[str, List[int]]]:
        return {
            str(i): {str(c): list(self.members[i][c]) for c in self.colors}
            for i in range(self.ell + 1)
        }


@dataclass(frozen=True)
class NetViolation:
    kind: str  # nesting | packing | covering | coloring | top | size
    level: int
    color: int
    points: Tuple[int, ...]
    detail: str = ""
