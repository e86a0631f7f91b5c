from typing import Optional

from app.config import settings
from app.domain.repositories.spanner_repository import SpannerRepository
from app.infrastructure.database.database import create_session_factory
from app.infrastructure.database.sql_repository import SqlRepository
from app.infrastructure.storage.memory_repository import MemoryRepository


class RepositoryFactory:
    """Фабрика для создания хранилища"""

    @staticmethod
    def create_repository(database_url: Optional[str] = None) -> SpannerRepository:
        """
        Создает хранилище в зависимости от окружения

        Args:
            database_url: адрес базы данных (по умолчанию settings.database_url)

        Returns:
            Экземпляр SpannerRepository
        """
        repository_type = settings.repository_type.lower()

        if repository_type == "memory":
            return MemoryRepository()
        elif repository_type == "database":
            return SqlRepository(create_session_factory(database_url))
        else:
            raise ValueError(f"Unknown repository type: {repository_type}")
