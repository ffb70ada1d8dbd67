"""
配置 - 资源上限和日志级别
读取顺序: 专用环境变量 -> 共享变量 ARF_ENGINE_MAX_DIM -> 默认值
(.env 文件通过 python-dotenv 加载, 真实环境变量优先)
"""

import logging
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import find_dotenv, load_dotenv

from .errors import ConfigError

SHARED_DIM_VAR = "ARF_ENGINE_MAX_DIM"


def _read_int(name: str, fallback_name: Optional[str], default: int) -> int:
    raw = os.getenv(name)
    if raw is None and fallback_name:
        raw = os.getenv(fallback_name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None
    if value < 0:
        raise ConfigError(f"{name} must be non-negative, got {value}")
    return value


@dataclass(frozen=True)
class Settings:
    """资源上限 (guards)"""

    enumerate_max_dim: int = 8
    democratic_max_dim: int = 20
    filter_max_dim: int = 4
    enumerate_max_order: int = 200_000
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        load_dotenv(find_dotenv(usecwd=True))
        level = (os.getenv("ARF_ENGINE_LOG_LEVEL") or cls.log_level).strip().upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ConfigError(f"ARF_ENGINE_LOG_LEVEL is not a logging level: {level!r}")
        return cls(
            enumerate_max_dim=_read_int("ARF_ENGINE_ENUMERATE_MAX_DIM", SHARED_DIM_VAR, cls.enumerate_max_dim),
            democratic_max_dim=_read_int("ARF_ENGINE_DEMOCRATIC_MAX_DIM", SHARED_DIM_VAR, cls.democratic_max_dim),
            filter_max_dim=_read_int("ARF_ENGINE_FILTER_MAX_DIM", SHARED_DIM_VAR, cls.filter_max_dim),
            enumerate_max_order=_read_int("ARF_ENGINE_MAX_ORDER", None, cls.enumerate_max_order),
            log_level=level,
        )


def resolve(settings: Optional[Settings]) -> Settings:
    return settings if settings is not None else Settings.from_env()
