"""Configuration package"""

from .config import load_config
from .models import DEFAULT_LIMITS, CatalogConfig, Limits, LogConfig, ToolkitConfig

__all__ = [
    "load_config",
    "DEFAULT_LIMITS",
    "CatalogConfig",
    "Limits",
    "LogConfig",
    "ToolkitConfig",
]
