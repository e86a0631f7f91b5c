import logging

import numpy as np

from app.domain.exceptions import InvalidParameterError

logger = logging.getLogger(__name__)

KINDS = ("uniform-cube", "clustered", "exp-spread-line")


def generate_points(kind: str, n: int, dim: int = 2, seed: int = 0) -> np.ndarray:
    """
    Генерирует тестовые точки.

    Args:
        kind: uniform-cube | clustered | exp-spread-line
        n: число точек
        dim: размерность координат
        seed: зерно генератора

    Returns:
        массив n×dim
    """
    if n < 1 or dim < 1:
        raise InvalidParameterError("n and dim must be positive")
    rng = np.random.default_rng(seed)
    if kind == "uniform-cube":
        points = rng.random((n, dim))
    elif kind == "clustered":
        centers = rng.random((max(1, round(n ** 0.5)), dim))
        labels = rng.integers(len(centers), size=n)
        points = centers[labels] + rng.normal(scale=0.02, size=(n, dim))
    elif kind == "exp-spread-line":
        if n > 1000:
            raise InvalidParameterError("exp-spread-line supports at most 1000 points")
        points = np.zeros((n, dim))
        points[:, 0] = [2.0 ** (i + 1) - 2.0 for i in range(n)]
    else:
        raise InvalidParameterError(f"unknown fixture kind: {kind} (expected one of {', '.join(KINDS)})")
    logger.info("generated %d %s points in dimension %d (seed %d)", n, kind, dim, seed)
    return points
