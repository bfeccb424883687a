#!/usr/bin/env python3

"""
Configuration management with environment variable support.

Configuration precedence (highest to lowest):
1. Command line arguments (applied by the CLI)
2. Environment variables (CONGTOOL_*, optionally from a .env file)
3. Configuration file (YAML)
4. Default values
"""

from pathlib import Path
from typing import Optional

import pydantic
from dotenv import load_dotenv

from ..utils.errors import ConfigError
from .models import ToolkitConfig

DEFAULT_CONFIG_PATH = Path("config/config.yaml")


def load_config(path: Optional[Path] = None, use_env: bool = True) -> ToolkitConfig:
    """Load the toolkit configuration.

    Args:
        path: YAML file; the default location is used when it exists
        use_env: Whether to apply CONGTOOL_* overrides

    Returns:
        Validated configuration

    Raises:
        ConfigError: If the file is missing, unreadable or invalid
    """
    try:
        if path is not None:
            config = ToolkitConfig.from_yaml(Path(path))
        elif DEFAULT_CONFIG_PATH.exists():
            config = ToolkitConfig.from_yaml(DEFAULT_CONFIG_PATH)
        else:
            config = ToolkitConfig()
        if use_env:
            load_dotenv()
            config = ToolkitConfig.from_env(config)
    except pydantic.ValidationError as exc:
        raise ConfigError(
            "Invalid configuration",
            details={"errors": exc.errors(include_url=False, include_context=False,
                                         include_input=False)},
        ) from exc
    except (ValueError, OSError) as exc:
        raise ConfigError(str(exc)) from exc
    return config
