"""Session configuration: defaults < YAML session file < command-line flags."""
import os
from typing import Any, Dict, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field

from config.config import (
    DEFAULT_K_MAX,
    DEFAULT_M_MAX,
    DEFAULT_MODULUS,
    DEFAULT_OUTPUT,
    DEFAULT_PRIME_COUNT,
    DEFAULT_SEED,
    DEFAULT_WORKERS,
    LOG_DATABASE_FILE_PATH,
)


class SessionConfig(BaseModel):
    """One invocation's settings. Fixed seed and budgets make json output reproducible."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    modulus: int = Field(DEFAULT_MODULUS, ge=1)
    m_max: int = Field(DEFAULT_M_MAX, ge=1)
    k_max: int = Field(DEFAULT_K_MAX, ge=1)
    prime_count: int = Field(DEFAULT_PRIME_COUNT, ge=1)
    output: Literal["text", "json"] = DEFAULT_OUTPUT
    seed: int = DEFAULT_SEED
    workers: int = Field(DEFAULT_WORKERS, ge=0)
    log_db: Optional[str] = LOG_DATABASE_FILE_PATH
    verbose: bool = False

    def fingerprint(self) -> Dict[str, Any]:
        """Fields that influence report content (log/console settings excluded)."""
        return {
            "modulus": self.modulus,
            "m_max": self.m_max,
            "k_max": self.k_max,
            "prime_count": self.prime_count,
            "seed": self.seed,
        }


def read_session_file(path: str) -> Dict[str, Any]:
    """Read a YAML session file. An empty file yields no overrides."""
    if not os.path.exists(path):
        raise FileNotFoundError(f"session file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"session file {path} must hold a mapping, got {type(data).__name__}")
    return data


def load_session_config(path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> SessionConfig:
    """
    Build a SessionConfig.

    Args:
        path: optional YAML session file.
        overrides: values given explicitly on the command line; None entries are ignored.

    Raises:
        pydantic.ValidationError: on out-of-range or unknown fields.
    """
    values: Dict[str, Any] = {}
    if path:
        values.update(read_session_file(path))
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return SessionConfig(**values)
