from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional
from uuid import UUID


class SpannerRepository(ABC):
    """Абстрактное хранилище метрик, спаннеров и отчётов проверки"""

    # Metric operations
    @abstractmethod
    def get_metric(self, metric_id: UUID) -> Optional[Dict[str, Any]]:
        pass

    @abstractmethod
    def create_metric(self, metric_data: Dict[str, Any]) -> Dict[str, Any]:
        pass

    @abstractmethod
    def delete_metric(self, metric_id: UUID) -> bool:
        pass

    # Spanner operations
    @abstractmethod
    def get_spanner(self, spanner_id: UUID) -> Optional[Dict[str, Any]]:
        pass

    @abstractmethod
    def get_spanners(self, metric_id: Optional[UUID] = None, skip: int = 0, limit: int = 100) -> List[Dict[str, Any]]:
        pass

    @abstractmethod
    def create_spanner(self, spanner_data: Dict[str, Any]) -> Dict[str, Any]:
        pass

    @abstractmethod
    def delete_spanner(self, spanner_id: UUID) -> bool:
        pass

    # Report operations
    @abstractmethod
    def save_report(self, spanner_id: UUID, report: Dict[str, Any]) -> Dict[str, Any]:
        pass

    @abstractmethod
    def get_report(self, spanner_id: UUID) -> Optional[Dict[str, Any]]:
        pass
