"""
Runtime configuration for cdspack.
Values come from the environment, with a local .env file merged in first.
"""
import os
import logging
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, field_validator

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
ORACLE_HARD_MAX_VERTICES = 20


class Settings(BaseModel):
    """Knobs read from CDSPACK_* environment variables."""
    model_config = ConfigDict(frozen=True)

    log_level: str = "INFO"
    oracle_max_vertices: int = 7
    oracle_max_sets: int = 200_000
    lp_max_rounds: Optional[int] = None
    decompose_max_rounds: int = 500
    max_workers: int = 1

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Invalid CDSPACK_LOG_LEVEL: {value}")
        return value

    @field_validator("oracle_max_vertices")
    @classmethod
    def _oracle_cap(cls, value: int) -> int:
        if not 1 <= value <= ORACLE_HARD_MAX_VERTICES:
            raise ValueError(
                f"CDSPACK_ORACLE_MAX_VERTICES must be in 1..{ORACLE_HARD_MAX_VERTICES}, got {value}"
            )
        return value

    @field_validator("oracle_max_sets", "decompose_max_rounds", "max_workers")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"Setting must be positive, got {value}")
        return value


def _env_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError as e:
        raise ValueError(f"Invalid integer in {name}: {raw!r}") from e


def get_settings() -> Settings:
    """
    Build Settings from the current environment.

    Returns:
        Settings with defaults for every unset variable

    Raises:
        ValueError: If a variable is set to an invalid value
    """
    values = {
        "log_level": os.getenv("CDSPACK_LOG_LEVEL", "INFO"),
        "oracle_max_vertices": _env_int("CDSPACK_ORACLE_MAX_VERTICES"),
        "oracle_max_sets": _env_int("CDSPACK_ORACLE_MAX_SETS"),
        "lp_max_rounds": _env_int("CDSPACK_LP_MAX_ROUNDS"),
        "decompose_max_rounds": _env_int("CDSPACK_DECOMPOSE_MAX_ROUNDS"),
        "max_workers": _env_int("CDSPACK_MAX_WORKERS"),
    }
    settings = Settings(**{k: v for k, v in values.items() if v is not None})
    logger.debug(f"Loaded settings: {settings}")
    return settings
