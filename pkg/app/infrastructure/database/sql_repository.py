import logging
from datetime import datetime
from typing import Any, Dict, List, Optional
from uuid import UUID

from sqlalchemy import select
from sqlalchemy.orm import sessionmaker

from app.domain.repositories.spanner_repository import SpannerRepository
from app.infrastructure.database import models

logger = logging.getLogger(__name__)


class SqlRepository(SpannerRepository):
    """
    Хранилище на SQLAlchemy (sqlite по умолчанию, любой DATABASE_URL).

    Каждая операция выполняется в своей транзакции; удаление метрики
    каскадно удаляет спаннеры и их отчеты в той же транзакции.
    """

    def __init__(self, session_factory: sessionmaker):
        self.session_factory = session_factory

    @staticmethod
    def _model_to_dict(model_instance) -> Optional[Dict[str, Any]]:
        """Конвертирует SQLAlchemy модель в словарь"""
        if model_instance is None:
            return None
        return {column.name: getattr(model_instance, column.name) for column in model_instance.__table__.columns}

    def _create(self, model_class, data: Dict[str, Any]) -> Dict[str, Any]:
        with self.session_factory.begin() as db:
            instance = model_class(**data)
            db.add(instance)
            db.flush()
            record = self._model_to_dict(instance)
        logger.debug("stored %s %s", model_class.__tablename__, record["id"])
        return record

    def _get(self, model_class, record_id: UUID) -> Optional[Dict[str, Any]]:
        with self.session_factory() as db:
            return self._model_to_dict(db.get(model_class, record_id))

    def _delete(self, model_class, record_id: UUID) -> bool:
        with self.session_factory.begin() as db:
            instance = db.get(model_class, record_id)
            if instance is None:
                return False
            db.delete(instance)
        return True

    # Metric operations
    def get_metric(self, metric_id: UUID) -> Optional[Dict[str, Any]]:
        return self._get(models.Metric, metric_id)

    def create_metric(self, metric_data: Dict[str, Any]) -> Dict[str, Any]:
        return self._create(models.Metric, metric_data)

    def delete_metric(self, metric_id: UUID) -> bool:
        return self._delete(models.Metric, metric_id)

    # Spanner operations
    def get_spanner(self, spanner_id: UUID) -> Optional[Dict[str, Any]]:
        return self._get(models.Spanner, spanner_id)

    def get_spanners(self, metric_id: Optional[UUID] = None, skip: int = 0, limit: int = 100) -> List[Dict[str, Any]]:
        query = select(models.Spanner).order_by(models.Spanner.created_at)
        if metric_id is not None:
            query = query.where(models.Spanner.metric_id == metric_id)
        with self.session_factory() as db:
            spanners = db.scalars(query.offset(skip).limit(limit)).all()
            return [self._model_to_dict(spanner) for spanner in spanners]

    def create_spanner(self, spanner_data: Dict[str, Any]) -> Dict[str, Any]:
        return self._create(models.Spanner, spanner_data)

    def delete_spanner(self, spanner_id: UUID) -> bool:
        return self._delete(models.Spanner, spanner_id)

    # Report operations
    @staticmethod
    def _report_to_dict(report: Optional[models.Report]) -> Optional[Dict[str, Any]]:
        if report is None:
            return None
        return dict(report.payload, spanner_id=report.spanner_id, created_at=report.created_at)

    def save_report(self, spanner_id: UUID, report: Dict[str, Any]) -> Dict[str, Any]:
        with self.session_factory.begin() as db:
            stored = db.get(models.Report, spanner_id)
            if stored is None:
                stored = models.Report(spanner_id=spanner_id)
                db.add(stored)
            stored.payload = report
            stored.created_at = datetime.utcnow()
            db.flush()
            return self._report_to_dict(stored)

    def get_report(self, spanner_id: UUID) -> Optional[Dict[str, Any]]:
        with self.session_factory() as db:
            return self._report_to_dict(db.get(models.Report, spanner_id))
