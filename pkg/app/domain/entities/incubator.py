from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from app.domain.entities.nets import ColoredNets

IncubatorKey = Tuple[int, int]  # (identity, lowest level)


class IncubatorEdgeKind(str, Enum):
    LOCAL_TREE = "local_tree"
    FOREIGN = "foreign"
    CROSS = "cross"
    SHORTCUT = "shortcut"


@dataclass(frozen=True)
class Incubator:
    """Инкубатор (x, I): I = [lo, hi]; для обычного инкубатора lo == hi"""

    identity: int
    lo: int
    hi: int
    color: int

    @property
    def key(self) -> IncubatorKey:
        return (self.identity, self.lo)

    @property
    def is_super(self) -> bool:
        return self.hi > self.lo


@dataclass(frozen=True)
class IncubatorEdge:
    kind: IncubatorEdgeKind
    a: IncubatorKey  # для рёбер дерева — ребёнок
    b: IncubatorKey  # для рёбер дерева — родитель
    level: Optional[int] = None


@dataclass
class IncubatorGraph:
    nets: ColoredNets
    eps: float
    gamma: float
    merged: bool
    incubators: Dict[IncubatorKey, Incubator]
    level_index: Dict[Tuple[int, int], IncubatorKey]  # (точка, уровень) -> инкубатор
    parent: Dict[IncubatorKey, Optional[IncubatorKey]]
    children: Dict[IncubatorKey, List[IncubatorKey]]
    roots: Tuple[IncubatorKey, ...]  # корень дерева T_c для каждого цвета
    edges: List[IncubatorEdge] = field(default_factory=list)
    zombies: Dict[IncubatorKey, int] = field(default_factory=dict)

    def at(self, x: int, level: int) -> Incubator:
        return self.incubators[self.level_index[(x, level)]]

    def of_kind(self, kind: IncubatorEdgeKind) -> List[IncubatorEdge]:
        return [e for e in self.edges if e.kind is kind]

    @cached_property
    def foreign_parents(self) -> Dict[Tuple[IncubatorKey, int], IncubatorKey]:
        """(ребёнок, цвет) -> чужой родитель этого цвета"""
        return {
            (e.a, self.incubators[e.b].color): e.b
            for e in self.edges if e.kind is IncubatorEdgeKind.FOREIGN
        }

    def is_leaf(self, key: IncubatorKey) -> bool:
        return not self.children[key]

    def tree(self, color: int) -> List[IncubatorKey]:
        return sorted(k for k, inc in self.incubators.items() if inc.color == color)

    def subtree(self, root: IncubatorKey) -> List[IncubatorKey]:
        result, stack = [], [root]
        while stack:
            key = stack.pop()
            result.append(key)
            stack.extend(self.children[key])
        return result

    def copy(self) -> "IncubatorGraph":
        return IncubatorGraph(
            nets=self.nets, eps=self.eps, gamma=self.gamma, merged=self.merged,
            incubators=self.incubators, level_index=self.level_index,
            parent=self.parent, children=self.children, roots=self.roots,
            edges=list(self.edges), zombies=dict(self.zombies),
        )
