from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class MetricSpace:
    """
    Конечное метрическое пространство с точным оракулом расстояний.

    Точки задаются либо координатами (евклидово расстояние), либо явной
    матрицей n×n. Идентификаторы точек — индексы 0..n-1.
    """

    coords: Optional[np.ndarray] = None
    matrix_input: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if (self.coords is None) == (self.matrix_input is None):
            raise ValueError("exactly one of coords or matrix_input must be given")
        if self.coords is not None:
            coords = np.array(self.coords, dtype=np.float64, copy=True)
            if coords.ndim == 1:
                coords = coords.reshape(-1, 1)
            coords.setflags(write=False)
            object.__setattr__(self, "coords", coords)
        else:
            matrix = np.array(self.matrix_input, dtype=np.float64, copy=True)
            if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
                raise ValueError("distance matrix must be square")
            matrix.setflags(write=False)
            object.__setattr__(self, "matrix_input", matrix)

    @classmethod
    def from_points(cls, points) -> "MetricSpace":
        return cls(coords=np.asarray(points, dtype=np.float64))

    @classmethod
    def from_matrix(cls, matrix) -> "MetricSpace":
        return cls(matrix_input=np.asarray(matrix, dtype=np.float64))

    @property
    def n(self) -> int:
        if self.coords is not None:
            return int(self.coords.shape[0])
        return int(self.matrix_input.shape[0])

    @property
    def backend(self) -> str:
        return "euclidean" if self.coords is not None else "matrix"

    @property
    def dimension(self) -> Optional[int]:
        return None if self.coords is None else int(self.coords.shape[1])

    @cached_property
    def matrix(self) -> np.ndarray:
        """Полная матрица расстояний (только чтение)"""
        if self.coords is None:
            return self.matrix_input
        diff = self.coords[:, None, :] - self.coords[None, :, :]
        with np.errstate(over="ignore"):
            result = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        overflow = ~np.isfinite(result)
        if overflow.any():
            # квадраты разностей вышли за float64: считаем с масштабом по max |diff|
            big = np.abs(diff[overflow])
            peak = big.max(axis=1)
            result[overflow] = peak * np.sqrt(np.sum((big / peak[:, None]) ** 2, axis=1))
        result.setflags(write=False)
        return result

    def dist(self, i: int, j: int) -> float:
        return float(self.matrix[i, j])

    def scaled(self, scale: float) -> "MetricSpace":
        if self.coords is not None:
            return MetricSpace(coords=self.coords * scale)
        return MetricSpace(matrix_input=self.matrix_input * scale)


@dataclass(frozen=True)
class MstResult:
    edges: Tuple[Tuple[int, int], ...]
    weight: float
