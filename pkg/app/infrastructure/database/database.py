from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import declarative_base, sessionmaker

from app.config import settings

# Create Base class
Base = declarative_base()


def create_db_engine(database_url: str = None) -> Engine:
    """Создает engine; для sqlite разрешает доступ из потоков FastAPI"""
    url = database_url or settings.database_url
    connect_args = {"check_same_thread": False} if url.startswith("sqlite") else {}
    return create_engine(url, connect_args=connect_args)


def create_session_factory(database_url: str = None) -> sessionmaker:
    """Создает таблицы (если их нет) и фабрику сессий"""
    engine = create_db_engine(database_url)
    Base.metadata.create_all(bind=engine)
    return sessionmaker(autocommit=False, autoflush=False, bind=engine)
