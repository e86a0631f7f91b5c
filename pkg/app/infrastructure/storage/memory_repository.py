from datetime import datetime, timezone
from typing import Any, Dict, List, Optional
from uuid import UUID, uuid4

from app.domain.repositories.spanner_repository import SpannerRepository


class MemoryRepository(SpannerRepository):
    """Хранилище в памяти процесса (тесты и разовые запуски)"""

    def __init__(self):
        self.metrics: Dict[UUID, Dict[str, Any]] = {}
        self.spanners: Dict[UUID, Dict[str, Any]] = {}
        self.reports: Dict[UUID, Dict[str, Any]] = {}

    @staticmethod
    def _stamp(data: Dict[str, Any]) -> Dict[str, Any]:
        record = dict(data)
        record["id"] = uuid4()
        record["created_at"] = datetime.now(timezone.utc)
        return record

    # Metric operations
    def get_metric(self, metric_id: UUID) -> Optional[Dict[str, Any]]:
        return self.metrics.get(metric_id)

    def create_metric(self, metric_data: Dict[str, Any]) -> Dict[str, Any]:
        metric = self._stamp(metric_data)
        self.metrics[metric["id"]] = metric
        return metric

    def delete_metric(self, metric_id: UUID) -> bool:
        if metric_id not in self.metrics:
            return False
        del self.metrics[metric_id]
        for spanner_id in [s["id"] for s in self.spanners.values() if s["metric_id"] == metric_id]:
            self.delete_spanner(spanner_id)
        return True

    # Spanner operations
    def get_spanner(self, spanner_id: UUID) -> Optional[Dict[str, Any]]:
        return self.spanners.get(spanner_id)

    def get_spanners(self, metric_id: Optional[UUID] = None, skip: int = 0, limit: int = 100) -> List[Dict[str, Any]]:
        spanners = sorted(self.spanners.values(), key=lambda s: s["created_at"])
        if metric_id is not None:
            spanners = [s for s in spanners if s["metric_id"] == metric_id]
        return spanners[skip:skip + limit]

    def create_spanner(self, spanner_data: Dict[str, Any]) -> Dict[str, Any]:
        spanner = self._stamp(spanner_data)
        self.spanners[spanner["id"]] = spanner
        return spanner

    def delete_spanner(self, spanner_id: UUID) -> bool:
        if spanner_id not in self.spanners:
            return False
        del self.spanners[spanner_id]
        self.reports.pop(spanner_id, None)
        return True

    # Report operations
    def save_report(self, spanner_id: UUID, report: Dict[str, Any]) -> Dict[str, Any]:
        record = dict(report, spanner_id=spanner_id, created_at=datetime.now(timezone.utc))
        self.reports[spanner_id] = record
        return record

    def get_report(self, spanner_id: UUID) -> Optional[Dict[str, Any]]:
        return self.reports.get(spanner_id)
