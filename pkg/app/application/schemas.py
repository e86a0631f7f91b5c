from datetime import datetime
from typing import Dict, List, Literal, Optional
from uuid import UUID

from pydantic import BaseModel, ConfigDict, Field, model_validator


# ----- Metric -----
class MetricCreate(BaseModel):
    points: Optional[List[List[float]]] = Field(default=None, json_schema_extra={"example": [[0, 0], [1, 0], [0, 1]]})
    matrix: Optional[List[List[float]]] = None
    validate_triangle: bool = False

    @model_validator(mode="after")
    def _exactly_one(self) -> "MetricCreate":
        if (self.points is None) == (self.matrix is None):
            raise ValueError("provide exactly one of 'points' or 'matrix'")
        return self


class MetricRead(BaseModel):
    id: UUID
    n: int
    backend: str
    scale: float
    diameter: float
    created_at: datetime

    model_config = ConfigDict(from_attributes=True)


# ----- Spanner -----
class BuildRequest(BaseModel):
    metric_id: UUID
    eps: Optional[float] = Field(default=None, json_schema_extra={"example": 0.4})
    k: Optional[int] = Field(default=None, json_schema_extra={"example": 1})
    dim: Optional[float] = None
    seed: Optional[int] = None


class StatsRead(BaseModel):
    """Статистика построения; ключи в camelCase, схема версии 1"""

    schema_version: int = Field(default=1, alias="schema")
    n: int
    k: int
    eps: float
    edges: int
    max_degree: int = Field(alias="maxDegree")
    degree_by_tag: Dict[str, int] = Field(alias="degreeByTag")
    lightness: float
    hop_stretch: float = Field(alias="hopStretch")
    hop_diameter: Optional[int] = Field(alias="hopDiameter")
    build_millis: float = Field(alias="buildMillis")

    model_config = ConfigDict(populate_by_name=True)


class SpannerRead(BaseModel):
    id: UUID
    metric_id: UUID
    eps: float
    k: int
    dim: float
    seed: int
    stats: StatsRead
    created_at: datetime

    model_config = ConfigDict(from_attributes=True)


class EdgeRead(BaseModel):
    u: int
    v: int
    weight: float
    tags: List[str]
    head: Optional[int] = None


# ----- Verification -----
class VerifyRequest(BaseModel):
    mode: Literal["auto", "exhaustive", "sampled"] = "auto"
    trials: Optional[int] = Field(default=None, ge=1)
    seed: int = 0
    checks: List[str] = Field(default_factory=list, json_schema_extra={"example": ["zombie-displacement"]})


class ViolationRead(BaseModel):
    check: str
    detail: str
    witness: Optional[dict] = None


class ReportRead(BaseModel):
    ok: bool
    mode: str
    failure_sets: int = Field(alias="failureSets")
    max_stretch: Optional[float] = Field(alias="maxStretch")
    witness: Optional[dict] = None
    hop_stretch: Optional[float] = Field(default=None, alias="hopStretch")
    hop_diameter: Optional[float] = Field(default=None, alias="hopDiameter")
    max_degree: int = Field(alias="maxDegree")
    degree_by_tag: Dict[str, int] = Field(alias="degreeByTag")
    lightness: Optional[float] = None
    violations: List[ViolationRead] = Field(default_factory=list)

    model_config = ConfigDict(populate_by_name=True)
