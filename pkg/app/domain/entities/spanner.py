from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, Optional, Tuple

import numpy as np


class EdgeTag(str, Enum):
    LOCAL_TREE = "local_tree"
    SHORTCUT = "shortcut"
    FOREIGN = "foreign"
    CROSS = "cross"
    SINK = "sink"


SKELETON_TAGS = frozenset({EdgeTag.LOCAL_TREE, EdgeTag.SHORTCUT})


def edge_key(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SpannerEdge:
    u: int
    v: int
    weight: float
    tags: FrozenSet[EdgeTag]
    head: Optional[int] = None  # конец, в который направлено ребро

    @property
    def key(self) -> Tuple[int, int]:
        return (self.u, self.v)

    @property
    def is_skeleton(self) -> bool:
        return bool(self.tags & SKELETON_TAGS)

    def is_pure(self, tag: EdgeTag) -> bool:
        return self.tags == frozenset({tag})

    @property
    def tail(self) -> Optional[int]:
        if self.head is None:
            return None
        return self.u if self.head == self.v else self.v


@dataclass
class Spanner:
    """
    Неориентированный взвешенный список рёбер над точками 0..n-1.

    Параллельные вхождения одной пары сливаются в одно ребро с объединением
    тегов. После построения объект только читается.
    """

    n: int
    edges: Dict[Tuple[int, int], SpannerEdge] = field(default_factory=dict)

    def add(self, u: int, v: int, weight: float, tags: Iterable[EdgeTag], head: Optional[int] = None) -> None:
        if u == v:
            return
        key = edge_key(u, v)
        tags = frozenset(tags)
        current = self.edges.get(key)
        if current is None:
            self.edges[key] = SpannerEdge(key[0], key[1], weight, tags, head)
        else:
            self.edges[key] = SpannerEdge(
                key[0], key[1], current.weight, current.tags | tags,
                current.head if current.head is not None else head,
            )

    def __iter__(self) -> Iterator[SpannerEdge]:
        for key in sorted(self.edges):
            yield self.edges[key]

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, pair) -> bool:
        return edge_key(*pair) in self.edges

    def get(self, u: int, v: int) -> Optional[SpannerEdge]:
        return self.edges.get(edge_key(u, v))

    @property
    def weight(self) -> float:
        return float(sum(e.weight for e in self))

    def copy(self) -> "Spanner":
        return Spanner(self.n, dict(self.edges))

    def merged(self, other: "Spanner") -> "Spanner":
        result = self.copy()
        for e in other:
            result.add(e.u, e.v, e.weight, e.tags, e.head)
        return result

    def filtered(self, predicate) -> "Spanner":
        return Spanner(self.n, {k: e for k, e in self.edges.items() if predicate(e)})

    def reweighted(self, ms) -> "Spanner":
        """Пересчитывает веса по метрике ms (например, после нормализации)"""
        return Spanner(self.n, {
            k: SpannerEdge(e.u, e.v, ms.dist(e.u, e.v), e.tags, e.head) for k, e in self.edges.items()
        })

    def degrees(self, tag: Optional[EdgeTag] = None) -> np.ndarray:
        result = np.zeros(self.n, dtype=np.int64)
        for e in self.edges.values():
            if tag is None or tag in e.tags:
                result[e.u] += 1
                result[e.v] += 1
        return result

    def out_degrees(self, tag: EdgeTag) -> np.ndarray:
        result = np.zeros(self.n, dtype=np.int64)
        for e in self.edges.values():
            if tag in e.tags and e.head is not None:
                result[e.tail] += 1
        return result

    def weight_matrix(self, failed: Iterable[int] = ()) -> np.ndarray:
        """Матрица весов: inf — нет ребра, 0 на диагонали; удалённые вершины изолированы"""
        w = np.full((self.n, self.n), np.inf)
        np.fill_diagonal(w, 0.0)
        dead = set(failed)
        for e in self.edges.values():
            if e.u in dead or e.v in dead:
                continue
            w[e.u, e.v] = w[e.v, e.u] = e.weight
        return w
