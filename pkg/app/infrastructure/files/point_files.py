import csv
import io
import json
from pathlib import Path
from typing import Union

import numpy as np

from app.domain.entities.metric_space import MetricSpace
from app.domain.exceptions import PointFormatError
from app.domain.services.metric import validate_matrix


def parse_points_csv(text: str) -> MetricSpace:
    """CSV координат: одна точка на строку"""
    rows = []
    for row in csv.reader(io.StringIO(text)):
        if not row or row[0].lstrip().startswith("#"):
            continue
        try:
            rows.append([float(value) for value in row])
        except ValueError as e:
            raise PointFormatError(f"bad coordinate row {row!r}: {e}") from e
    if not rows:
        raise PointFormatError("no points found")
    if len({len(r) for r in rows}) != 1:
        raise PointFormatError("all rows must have the same number of coordinates")
    return MetricSpace.from_points(rows)


def parse_points_json(text: str, check_triangle: bool = False) -> MetricSpace:
    """
    JSON двух видов:
      {"dim": d, "points": [[...], ...]} — координаты;
      [[...], ...] — явная матрица расстояний n×n.
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise PointFormatError(f"invalid JSON: {e}") from e
    if isinstance(payload, dict):
        points = payload.get("points")
        if not points:
            raise PointFormatError("JSON object must contain a non-empty 'points' list")
        dim = payload.get("dim")
        if dim is not None and any(len(p) != dim for p in points):
            raise PointFormatError(f"every point must have {dim} coordinates")
        return MetricSpace.from_points(points)
    if isinstance(payload, list):
        try:
            ms = MetricSpace.from_matrix(payload)
        except ValueError as e:
            raise PointFormatError(str(e)) from e
        validate_matrix(ms, check_triangle=check_triangle)
        return ms
    raise PointFormatError("unsupported JSON payload")


def load_metric(path: Union[str, Path], check_triangle: bool = False) -> MetricSpace:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return parse_points_json(text, check_triangle=check_triangle)
    return parse_points_csv(text)


def dump_points(points: np.ndarray, path: Union[str, Path]) -> None:
    """Пишет координаты в CSV или JSON (по расширению); repr сохраняет float точно"""
    path = Path(path)
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points.reshape(-1, 1)
    if path.suffix.lower() == ".json":
        payload = {"dim": int(points.shape[1]), "points": points.tolist()}
        path.write_text(json.dumps(payload) + "\n")
        return
    lines = [",".join(repr(float(v)) for v in row) for row in points]
    path.write_text("\n".join(lines) + "\n")
