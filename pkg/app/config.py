import logging
from typing import Optional

from pydantic import BaseModel, ConfigDict, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.domain.exceptions import InvalidParameterError


class Settings(BaseSettings):
    default_eps: float = 0.4
    default_k: int = 1
    default_dim: float = 2.0
    default_seed: int = 0

    # Проверка отказоустойчивости
    exhaustive_limit: int = 50_000
    sampled_trials: int = 2_000
    jobs: int = 1
    validate_triangle: bool = False

    # Хранилище: memory | database
    repository_type: str = "memory"
    database_url: str = "sqlite:///./spanners.db"

    log_level: str = "INFO"

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")


settings = Settings()


class BuildConfig(BaseModel):
    """Параметры построения спаннера"""

    eps: float
    k: int
    dim: float = 2.0
    seed: int = 0

    model_config = ConfigDict(frozen=True)

    @field_validator("eps")
    @classmethod
    def _eps_range(cls, value: float) -> float:
        if not 0 < value < 0.5:
            raise ValueError("eps must satisfy 0 < eps < 1/2")
        return value

    @field_validator("k")
    @classmethod
    def _k_range(cls, value: int) -> int:
        if value < 0:
            raise ValueError("k must be non-negative")
        return value

    @field_validator("dim")
    @classmethod
    def _dim_range(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("dim must be positive")
        return value

    @property
    def eps0(self) -> float:
        return self.eps / 3

    @property
    def eps_prime(self) -> float:
        # 1 + 10·eps' = 1 + eps/3
        return self.eps / 30

    @classmethod
    def create(cls, eps: Optional[float] = None, k: Optional[int] = None,
               dim: Optional[float] = None, seed: Optional[int] = None) -> "BuildConfig":
        """Собирает конфиг с подстановкой значений по умолчанию из settings"""
        try:
            return cls(
                eps=settings.default_eps if eps is None else eps,
                k=settings.default_k if k is None else k,
                dim=settings.default_dim if dim is None else dim,
                seed=settings.default_seed if seed is None else seed,
            )
        except ValueError as e:
            raise InvalidParameterError(str(e)) from e


def configure_logging(level: Optional[str] = None) -> None:
    """Настраивает корневой логгер один раз для CLI и API"""
    logging.basicConfig(
        level=(level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
