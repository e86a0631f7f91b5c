from datetime import datetime
from uuid import uuid4

from sqlalchemy import JSON, Column, DateTime, Float, ForeignKey, Integer, String, Text, Uuid
from sqlalchemy.orm import relationship

from app.infrastructure.database.database import Base


class TimestampMixin:
    created_at = Column(DateTime, default=datetime.utcnow, nullable=False)


class Metric(Base, TimestampMixin):
    __tablename__ = "metrics"
    id = Column(Uuid, primary_key=True, default=uuid4)
    points = Column(JSON, nullable=True)
    matrix = Column(JSON, nullable=True)
    n = Column(Integer, nullable=False)
    backend = Column(String(32), nullable=False)
    scale = Column(Float, nullable=False)
    diameter = Column(Float, nullable=False)
    spanners = relationship("Spanner", back_populates="metric", cascade="all, delete-orphan")


class Spanner(Base, TimestampMixin):
    __tablename__ = "spanners"
    id = Column(Uuid, primary_key=True, default=uuid4)
    metric_id = Column(ForeignKey("metrics.id", ondelete="CASCADE"), nullable=False, index=True)
    eps = Column(Float, nullable=False)
    k = Column(Integer, nullable=False)
    dim = Column(Float, nullable=False)
    seed = Column(Integer, nullable=False)
    stats = Column(JSON, nullable=False)
    edges_csv = Column(Text, nullable=False)
    metric = relationship("Metric", back_populates="spanners")
    report = relationship("Report", back_populates="spanner", uselist=False, cascade="all, delete-orphan")


class Report(Base, TimestampMixin):
    __tablename__ = "reports"
    # Один (последний) отчет на спаннер
    spanner_id = Column(ForeignKey("spanners.id", ondelete="CASCADE"), primary_key=True)
    payload = Column(JSON, nullable=False)
    spanner = relationship("Spanner", back_populates="report")
