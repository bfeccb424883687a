"""Configuration models"""

import os
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

ENV_PREFIX = "CONGTOOL_"


class LogConfig(BaseModel):
    """Logging configuration"""
    level: str = Field(
        default="WARNING",
        pattern="^(DEBUG|INFO|WARNING|ERROR|CRITICAL)$"
    )
    renderer: str = Field(default="console", pattern="^(console|json)$")


class Limits(BaseModel):
    """Desk-scale guardrails shared by every kernel"""
    closure_cap: int = Field(default=10_000_000, gt=0)
    work_cap: int = Field(default=50_000_000, gt=0)  # argument tuples evaluated per closure
    product_cap: int = Field(default=1_000_000, gt=0)
    lattice_cap: int = Field(default=10_000, gt=0)
    hs_cap: int = Field(default=2_000, gt=0)
    max_commutator_arity: int = Field(default=3, gt=0)
    polynomial_size_cap: int = Field(default=6, gt=0)
    trace_size_cap: int = Field(default=4, gt=0)
    induced_arity: int = Field(default=3, ge=3)
    identity_cap: int = Field(default=10_000_000, gt=0)
    candidate_cap: int = Field(default=12, gt=0)
    block_size: int = Field(default=1 << 22, gt=0)  # array cells per vectorized batch
    threads: int = Field(default=1, gt=0)

    model_config = {"frozen": True}


class CatalogConfig(BaseModel):
    """Algebra catalog location"""
    directory: Path = Field(default=Path("data/catalog"))

    @field_validator("directory")
    @classmethod
    def validate_directory(cls, v: Path) -> Path:
        """Reject paths that exist but are not directories"""
        if v.exists() and not v.is_dir():
            raise ValueError(f"Catalog path is not a directory: {v}")
        return v


class ToolkitConfig(BaseModel):
    """Top-level configuration"""
    log: LogConfig = Field(default_factory=LogConfig)
    limits: Limits = Field(default_factory=Limits)
    catalog: CatalogConfig = Field(default_factory=CatalogConfig)

    @model_validator(mode="after")
    def validate_arity(self) -> "ToolkitConfig":
        """The commutator engine only supports dimensions up to 4"""
        if self.limits.max_commutator_arity > 4:
            raise ValueError("max_commutator_arity above 4 is not supported")
        return self

    @classmethod
    def from_yaml(cls, path: Path) -> "ToolkitConfig":
        """Load configuration from YAML file"""
        import yaml

        if not path.exists():
            raise ValueError(f"Configuration file not found: {path}")

        with open(path) as f:
            data = yaml.safe_load(f) or {}

        return cls(**data)

    @classmethod
    def from_env(cls, base: Optional["ToolkitConfig"] = None) -> "ToolkitConfig":
        """Overlay CONGTOOL_* environment variables on a base configuration"""
        data: Dict[str, Any] = (base or cls()).model_dump()
        if os.getenv(f"{ENV_PREFIX}CATALOG"):
            data["catalog"]["directory"] = Path(os.environ[f"{ENV_PREFIX}CATALOG"])
        if os.getenv(f"{ENV_PREFIX}LOG_LEVEL"):
            data["log"]["level"] = os.environ[f"{ENV_PREFIX}LOG_LEVEL"].upper()
        if os.getenv(f"{ENV_PREFIX}CLOSURE_CAP"):
            data["limits"]["closure_cap"] = int(os.environ[f"{ENV_PREFIX}CLOSURE_CAP"])
        if os.getenv(f"{ENV_PREFIX}THREADS"):
            data["limits"]["threads"] = int(os.environ[f"{ENV_PREFIX}THREADS"])
        return cls(**data)


DEFAULT_LIMITS = Limits()
