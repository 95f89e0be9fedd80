from __future__ import annotations

from pathlib import Path

import yaml
from pydantic_settings import BaseSettings

from .schema import ZdqConfig


class Settings(BaseSettings):
    config_path: str = "config/default.yaml"
    log_level: str = ""

    model_config = {"env_prefix": "ZDQ_", "env_file": ".env"}


def load_config(settings: Settings) -> ZdqConfig:
    config_file = Path(settings.config_path)
    if not config_file.exists():
        config = ZdqConfig()
    else:
        with open(config_file) as f:
            raw = yaml.safe_load(f) or {}
        config = ZdqConfig(**raw)
    if settings.log_level:
        config.logging.level = settings.log_level
    return config
