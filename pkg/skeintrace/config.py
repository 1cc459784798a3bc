#!/usr/bin/env python3
"""
Skein Trace Configuration

Settings are read from a YAML file (``--config`` or ``SKEIN_TRACE_CONFIG_PATH``)
and from ``SKEIN_TRACE_*`` environment variables. File values win over
environment values; CLI flags win over both.
"""

import os
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Literal, Optional

import structlog
import yaml
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = structlog.get_logger(__name__)

DEFAULT_CONFIG_PATH = "configs/dev.yaml"
CONFIG_PATH_ENV = "SKEIN_TRACE_CONFIG_PATH"


class EngineKind(str, Enum):
    """Trace evaluation engines"""
    STATESUM = "statesum"
    TRANSFER = "transfer"


class SkeinTraceSettings(BaseSettings):
    """Runtime settings for the engine and CLI"""

    model_config = SettingsConfigDict(env_prefix="SKEIN_TRACE_", extra="ignore")

    log_level: str = "INFO"
    log_format: Literal["json", "console"] = "json"

    engine: EngineKind = EngineKind.TRANSFER
    statesum_max_junctures: int = Field(default=16, ge=0)
    oracle_max_junctures: int = Field(default=16, ge=0)
    order_check_max_terms: int = Field(default=400, ge=0)

    corpus_dir: Path = Path("contracts/fixtures/corpus")
    generated_corpus_size: int = Field(default=60, ge=0)
    generated_corpus_seed: int = 20240601
    max_corpus_junctures: int = Field(default=30, ge=1)
    invariance_perturbations: int = Field(default=5, ge=0)

    include_timing: bool = False


def _read_yaml(config_path: str) -> Dict[str, Any]:
    with open(config_path, "r") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"Configuration root must be a mapping: {config_path}")
    section = data.get("skein_trace", {})
    return section or {}


def load_settings(config_path: Optional[str] = None, **overrides: Any) -> SkeinTraceSettings:
    """Load settings from YAML plus environment, then apply explicit overrides"""

    path = config_path or os.getenv(CONFIG_PATH_ENV, DEFAULT_CONFIG_PATH)
    values: Dict[str, Any] = {}

    if path and os.path.exists(path):
        try:
            values = _read_yaml(path)
        except (OSError, yaml.YAMLError, ValueError) as e:
            logger.warning("config_load_failed", config_path=path, error=str(e))
    else:
        logger.debug("config_file_missing", config_path=path)

    values.update({k: v for k, v in overrides.items() if v is not None})
    return SkeinTraceSettings(**values)
