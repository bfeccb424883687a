"""Tests for the configuration component"""

from pathlib import Path

import pytest
import yaml
from pydantic import ValidationError

from src.config.config import load_config
from src.config.models import CatalogConfig, Limits, LogConfig, ToolkitConfig
from src.utils.errors import ConfigError


def test_log_config():
    """Test log configuration validation"""
    config = LogConfig(level="DEBUG", renderer="json")
    assert config.level == "DEBUG"
    assert config.renderer == "json"

    with pytest.raises(ValidationError):
        LogConfig(level="INVALID")
    with pytest.raises(ValidationError):
        LogConfig(renderer="xml")


def test_limits_defaults():
    """Test default guardrails"""
    limits = Limits()
    assert limits.closure_cap == 10_000_000
    assert limits.max_commutator_arity == 3
    assert limits.threads == 1

    with pytest.raises(ValidationError):
        Limits(closure_cap=0)
    with pytest.raises(ValidationError):
        Limits(induced_arity=2)


def test_limits_are_hashable():
    """Limits are frozen so kernels can cache on them"""
    assert hash(Limits()) == hash(Limits())
    with pytest.raises(ValidationError):
        Limits().threads = 4


def test_catalog_config(tmp_path: Path):
    """Test catalog directory validation"""
    assert CatalogConfig(directory=tmp_path).directory == tmp_path

    not_a_dir = tmp_path / "file.json"
    not_a_dir.write_text("{}")
    with pytest.raises(ValidationError):
        CatalogConfig(directory=not_a_dir)


def test_commutator_arity_limit():
    """The commutator engine supports at most 4 arguments"""
    with pytest.raises(ValidationError):
        ToolkitConfig(limits=Limits(max_commutator_arity=5))


def test_config_from_yaml(tmp_path: Path):
    """Test loading configuration from YAML"""
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump({
        "log": {"level": "INFO"},
        "limits": {"closure_cap": 1000, "threads": 3},
    }))
    config = ToolkitConfig.from_yaml(path)
    assert config.log.level == "INFO"
    assert config.limits.closure_cap == 1000
    assert config.limits.threads == 3
    assert config.limits.lattice_cap == Limits().lattice_cap


def test_env_overrides(monkeypatch, tmp_path: Path):
    """CONGTOOL_* variables override file values"""
    monkeypatch.setenv("CONGTOOL_LOG_LEVEL", "debug")
    monkeypatch.setenv("CONGTOOL_CLOSURE_CAP", "500")
    monkeypatch.setenv("CONGTOOL_THREADS", "2")
    monkeypatch.setenv("CONGTOOL_CATALOG", str(tmp_path))
    config = ToolkitConfig.from_env(ToolkitConfig())
    assert config.log.level == "DEBUG"
    assert config.limits.closure_cap == 500
    assert config.limits.threads == 2
    assert config.catalog.directory == tmp_path


def test_load_config_missing_file(tmp_path: Path):
    """A named file that does not exist is a configuration error"""
    with pytest.raises(ConfigError) as exc_info:
        load_config(tmp_path / "missing.yaml", use_env=False)
    assert exc_info.value.exit_code == 2


def test_load_config_invalid_values(tmp_path: Path):
    """Invalid values are reported with their locations"""
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump({"limits": {"closure_cap": -1}}))
    with pytest.raises(ConfigError) as exc_info:
        load_config(path, use_env=False)
    assert exc_info.value.details["errors"]


def test_repository_config_loads():
    """The shipped configuration file is valid"""
    path = Path(__file__).resolve().parent.parent / "config" / "config.yaml"
    config = load_config(path, use_env=False)
    assert config.catalog.directory == Path("data/catalog")
