from functools import lru_cache
from typing import List, Optional
from uuid import UUID

from fastapi import Depends, FastAPI, HTTPException, Query, Response, status
from fastapi.middleware.cors import CORSMiddleware

from app.application import schemas
from app.application.use_cases.build import build_with_stats
from app.application.use_cases.verify import verify_spanner
from app.config import BuildConfig, configure_logging, settings
from app.domain.entities.metric_space import MetricSpace
from app.domain.exceptions import SpannerError
from app.domain.repositories.spanner_repository import SpannerRepository
from app.domain.services.metric import diameter, normalize, validate_matrix
from app.infrastructure.files.spanner_files import spanner_from_csv, spanner_to_csv, spanner_to_dot
from app.infrastructure.storage.repository_factory import RepositoryFactory

configure_logging()

app = FastAPI(
    title="Fault-Tolerant Spanner API",
    description="API для построения и проверки отказоустойчивых лёгких спаннеров",
    version="1.0.0",
    openapi_tags=[
        {"name": "metrics", "description": "Метрические пространства"},
        {"name": "spanners", "description": "Построение и экспорт спаннеров"},
        {"name": "verification", "description": "Проверка растяжения, степеней и лёгкости"},
    ]
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@lru_cache(maxsize=1)
def _default_repository() -> SpannerRepository:
    return RepositoryFactory.create_repository()


def get_repository() -> SpannerRepository:
    """Dependency для получения хранилища (в памяти или в базе данных)"""
    return _default_repository()


def _metric_space(metric: dict) -> MetricSpace:
    if metric.get("points") is not None:
        return MetricSpace.from_points(metric["points"])
    return MetricSpace.from_matrix(metric["matrix"])


def _get_metric_or_404(metric_id: UUID, repository: SpannerRepository) -> dict:
    metric = repository.get_metric(metric_id)
    if metric is None:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail="Metric not found")
    return metric


def _get_spanner_or_404(spanner_id: UUID, repository: SpannerRepository) -> dict:
    spanner = repository.get_spanner(spanner_id)
    if spanner is None:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail="Spanner not found")
    return spanner


def _config(record: dict) -> BuildConfig:
    return BuildConfig.create(eps=record["eps"], k=record["k"], dim=record["dim"], seed=record["seed"])


@app.get("/health")
def health():
    return {"status": "ok"}


# Metric endpoints
@app.post("/metrics", response_model=schemas.MetricRead, status_code=status.HTTP_201_CREATED, tags=["metrics"])
def create_metric(payload: schemas.MetricCreate, repository: SpannerRepository = Depends(get_repository)):
    """Сохраняет точки или матрицу расстояний"""
    try:
        if payload.points is not None:
            ms = MetricSpace.from_points(payload.points)
        else:
            ms = MetricSpace.from_matrix(payload.matrix)
            validate_matrix(ms, check_triangle=payload.validate_triangle or settings.validate_triangle)
        _, scale = normalize(ms)
    except ValueError as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))

    return repository.create_metric({
        "points": payload.points,
        "matrix": payload.matrix,
        "n": ms.n,
        "backend": ms.backend,
        "scale": scale,
        "diameter": diameter(ms),
    })


@app.get("/metrics/{metric_id}", response_model=schemas.MetricRead, tags=["metrics"])
def read_metric(metric_id: UUID, repository: SpannerRepository = Depends(get_repository)):
    return _get_metric_or_404(metric_id, repository)


@app.delete("/metrics/{metric_id}", tags=["metrics"])
def delete_metric(metric_id: UUID, repository: SpannerRepository = Depends(get_repository)):
    """Удаляет метрику вместе с её спаннерами"""
    if not repository.delete_metric(metric_id):
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail="Metric not found")
    return {"message": "Metric deleted successfully"}


# Spanner endpoints
@app.post("/spanners", response_model=schemas.SpannerRead, status_code=status.HTTP_201_CREATED, tags=["spanners"])
def create_spanner(request: schemas.BuildRequest, repository: SpannerRepository = Depends(get_repository)):
    """Строит спаннер для сохранённой метрики"""
    metric = _get_metric_or_404(request.metric_id, repository)
    try:
        cfg = BuildConfig.create(eps=request.eps, k=request.k, dim=request.dim, seed=request.seed)
        result, stats = build_with_stats(_metric_space(metric), cfg)
    except SpannerError as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))

    return repository.create_spanner({
        "metric_id": metric["id"],
        "eps": cfg.eps,
        "k": cfg.k,
        "dim": cfg.dim,
        "seed": cfg.seed,
        "stats": stats,
        "edges_csv": spanner_to_csv(result.spanner),
    })


@app.get("/spanners", response_model=List[schemas.SpannerRead], tags=["spanners"])
def read_spanners(
    metric_id: Optional[UUID] = None,
    skip: int = 0,
    limit: int = 100,
    repository: SpannerRepository = Depends(get_repository),
):
    return repository.get_spanners(metric_id=metric_id, skip=skip, limit=limit)


@app.get("/spanners/{spanner_id}", response_model=schemas.SpannerRead, tags=["spanners"])
def read_spanner(spanner_id: UUID, repository: SpannerRepository = Depends(get_repository)):
    return _get_spanner_or_404(spanner_id, repository)


@app.get("/spanners/{spanner_id}/edges", response_model=List[schemas.EdgeRead], tags=["spanners"])
def read_spanner_edges(spanner_id: UUID, repository: SpannerRepository = Depends(get_repository)):
    spanner = spanner_from_csv(_get_spanner_or_404(spanner_id, repository)["edges_csv"])
    return [
        schemas.EdgeRead(u=e.u, v=e.v, weight=e.weight, tags=sorted(t.value for t in e.tags), head=e.head)
        for e in spanner
    ]


@app.get("/spanners/{spanner_id}/export", tags=["spanners"])
def export_spanner(
    spanner_id: UUID,
    format: str = Query("csv", pattern="^(csv|dot)$"),
    repository: SpannerRepository = Depends(get_repository),
):
    """Экспорт рёбер в CSV или DOT"""
    text = _get_spanner_or_404(spanner_id, repository)["edges_csv"]
    if format == "dot":
        return Response(content=spanner_to_dot(spanner_from_csv(text)), media_type="text/vnd.graphviz")
    return Response(content=text, media_type="text/csv")


@app.delete("/spanners/{spanner_id}", tags=["spanners"])
def delete_spanner(spanner_id: UUID, repository: SpannerRepository = Depends(get_repository)):
    if not repository.delete_spanner(spanner_id):
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail="Spanner not found")
    return {"message": "Spanner deleted successfully"}


# Verification endpoints
@app.post("/spanners/{spanner_id}/verify", response_model=schemas.ReportRead, tags=["verification"])
def verify(
    spanner_id: UUID,
    request: schemas.VerifyRequest,
    repository: SpannerRepository = Depends(get_repository),
):
    """Проверяет растяжение при отказах и, по запросу, именованные свойства построения"""
    record = _get_spanner_or_404(spanner_id, repository)
    metric = _get_metric_or_404(record["metric_id"], repository)
    try:
        report = verify_spanner(
            spanner_from_csv(record["edges_csv"]), _metric_space(metric), _config(record),
            mode=request.mode, trials=request.trials, seed=request.seed, checks=request.checks,
        )
    except SpannerError as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    payload = report.to_dict()
    repository.save_report(spanner_id, payload)
    return payload


@app.get("/spanners/{spanner_id}/report", response_model=schemas.ReportRead, tags=["verification"])
def read_report(spanner_id: UUID, repository: SpannerRepository = Depends(get_repository)):
    _get_spanner_or_404(spanner_id, repository)
    report = repository.get_report(spanner_id)
    if report is None:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail="Report not found")
    return report
