from uuid import uuid4

import pytest

from app.config import settings
from app.infrastructure.database.database import create_session_factory
from app.infrastructure.database.sql_repository import SqlRepository
from app.infrastructure.storage.memory_repository import MemoryRepository
from app.infrastructure.storage.repository_factory import RepositoryFactory

METRIC = {"points": [[0.0, 0.0], [2.0, 0.0]], "matrix": None, "n": 2, "backend": "euclidean", "scale": 1.0, "diameter": 2.0}


def spanner_data(metric_id):
    return {
        "metric_id": metric_id, "eps": 0.4, "k": 0, "dim": 2.0, "seed": 0,
        "stats": {"schema": 1, "edges": 1},
        "edges_csv": "# n=2\nu,v,weight,tags,orientation\n0,1,2.0,cross,\n",
    }


def database_url(tmp_path):
    return f"sqlite:///{tmp_path / 'spanners.db'}"


@pytest.fixture(params=["memory", "database"])
def repository(request, tmp_path):
    if request.param == "memory":
        return MemoryRepository()
    return SqlRepository(create_session_factory(database_url(tmp_path)))


def test_metric_roundtrip(repository):
    metric = repository.create_metric(METRIC)
    assert metric["id"] is not None
    stored = repository.get_metric(metric["id"])
    assert stored["id"] == metric["id"]
    assert stored["points"] == METRIC["points"]
    assert stored["created_at"] == metric["created_at"]
    assert repository.get_metric(uuid4()) is None


def test_spanner_roundtrip_and_filter(repository):
    first = repository.create_metric(METRIC)
    second = repository.create_metric(METRIC)
    a = repository.create_spanner(spanner_data(first["id"]))
    b = repository.create_spanner(spanner_data(second["id"]))

    stored = repository.get_spanner(a["id"])
    assert stored["edges_csv"] == spanner_data(first["id"])["edges_csv"]
    assert stored["metric_id"] == first["id"]
    assert stored["stats"] == {"schema": 1, "edges": 1}
    assert [s["id"] for s in repository.get_spanners(metric_id=second["id"])] == [b["id"]]
    assert len(repository.get_spanners()) == 2
    assert len(repository.get_spanners(skip=1, limit=5)) == 1


def test_report_and_cascade(repository):
    metric = repository.create_metric(METRIC)
    spanner = repository.create_spanner(spanner_data(metric["id"]))
    repository.save_report(spanner["id"], {"ok": False, "maxStretch": 1.5})
    repository.save_report(spanner["id"], {"ok": True, "maxStretch": 1.0})
    report = repository.get_report(spanner["id"])
    assert report["ok"] is True
    assert report["spanner_id"] == spanner["id"]

    assert repository.delete_metric(metric["id"])
    assert repository.get_spanner(spanner["id"]) is None
    assert repository.get_report(spanner["id"]) is None
    assert repository.get_spanners(metric_id=metric["id"]) == []
    assert not repository.delete_metric(metric["id"])
    assert not repository.delete_spanner(spanner["id"])


def test_database_survives_reopen(tmp_path):
    url = database_url(tmp_path)
    metric = SqlRepository(create_session_factory(url)).create_metric(METRIC)

    reopened = SqlRepository(create_session_factory(url))
    assert reopened.get_metric(metric["id"])["diameter"] == 2.0


def test_factory_reads_settings(monkeypatch, tmp_path):
    monkeypatch.setattr(settings, "repository_type", "memory")
    assert isinstance(RepositoryFactory.create_repository(), MemoryRepository)
    monkeypatch.setattr(settings, "repository_type", "database")
    assert isinstance(RepositoryFactory.create_repository(database_url(tmp_path)), SqlRepository)
    monkeypatch.setattr(settings, "repository_type", "postgres")
    with pytest.raises(ValueError):
        RepositoryFactory.create_repository()
