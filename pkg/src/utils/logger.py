"""
Configuration du logging.

Seuls les points d'entrée (main.py, scripts/) appellent setup_logging();
les modules se contentent de get_logger(__name__).
"""

import logging
import logging.config
import os
from pathlib import Path
from typing import Optional, Union

from utils.config_loader import load_yaml, resolve_path

DEFAULT_LOGGING_CONFIG = "config/logging_config.yaml"


def setup_logging(config_path: Union[str, Path] = DEFAULT_LOGGING_CONFIG,
                  level: Optional[str] = None) -> None:
    """Applique config/logging_config.yaml via dictConfig"""
    level = (level or os.getenv("VICSEK_LOG_LEVEL", "INFO")).upper()

    if resolve_path(config_path).exists():
        config = load_yaml(config_path)
        config.setdefault("root", {})["level"] = level
        logging.config.dictConfig(config)
    else:
        # Repli minimal si la configuration est absente
        logging.basicConfig(
            level=level,
            format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
        )


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
