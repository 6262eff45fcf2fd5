"""
Tests for configuration loading, environment overrides and validation
"""

import pytest
import yaml

from config_loader import ConfigLoader

ENV_NAMES = ["MUBGEO_CACHE_DIR", "MUBGEO_LOG_LEVEL", "MUBGEO_LOG_FILE", "MUBGEO_JOBS", "MUBGEO_SEED",
             "MUBGEO_TOLERANCE"]


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ENV_NAMES:
        monkeypatch.delenv(name, raising=False)


def write_config(tmp_path, text):
    path = tmp_path / "config.yaml"
    path.write_text(text)
    return path


def test_project_config_loads():
    config = ConfigLoader().load()
    assert config["limits"]["mub_order_cap"] == 16
    assert config["sic"]["max_selections"] == 31104
    assert config["cache"]["enabled"] is False


def test_missing_file_falls_back_to_defaults(tmp_path):
    loader = ConfigLoader(str(tmp_path / "absent.yaml"))
    config = loader.load()
    assert config == ConfigLoader.DEFAULTS
    assert config is not ConfigLoader.DEFAULTS


def test_partial_file_is_merged(tmp_path):
    loader = ConfigLoader(str(write_config(tmp_path, "mub:\n  seed: 7\n")))
    loader.load()
    assert loader.get("mub.seed") == 7
    assert loader.get("mub.max_retries") == 8
    assert loader.get("tolerances.sic") == 1e-8


def test_environment_overrides(tmp_path, monkeypatch):
    monkeypatch.setenv("MUBGEO_SEED", "42")
    monkeypatch.setenv("MUBGEO_LOG_LEVEL", "debug")
    monkeypatch.setenv("MUBGEO_TOLERANCE", "1e-6")
    monkeypatch.setenv("MUBGEO_JOBS", "3")
    monkeypatch.setenv("MUBGEO_CACHE_DIR", str(tmp_path / "cache"))
    loader = ConfigLoader(str(tmp_path / "absent.yaml"))
    loader.load()
    assert loader.get("mub.seed") == 42
    assert loader.get("logging.level") == "DEBUG"
    assert loader.get("tolerances.verification") == 1e-6
    assert loader.get("tarry.jobs") == 3
    assert loader.get("cache.enabled") is True
    assert loader.get("cache.cache_dir") == str(tmp_path / "cache")


def test_bad_environment_value(tmp_path, monkeypatch):
    monkeypatch.setenv("MUBGEO_JOBS", "many")
    with pytest.raises(ValueError, match="MUBGEO_JOBS"):
        ConfigLoader(str(tmp_path / "absent.yaml")).load()


def test_validation_collects_every_error(tmp_path):
    path = write_config(tmp_path, """
limits:
  mub_order_cap: 0
tolerances:
  verification: -1
logging:
  level: LOUD
tarry:
  jobs: 0
""")
    with pytest.raises(ValueError) as excinfo:
        ConfigLoader(str(path)).load()
    message = str(excinfo.value)
    assert message.startswith("Configuration validation failed:")
    for key in ("limits.mub_order_cap", "tolerances.verification", "logging.level", "tarry.jobs"):
        assert key in message


def test_unbounded_sic_sweep_allowed(tmp_path):
    loader = ConfigLoader(str(write_config(tmp_path, "sic:\n  max_selections: null\n")))
    loader.load()
    assert loader.get("sic.max_selections") is None


def test_get_with_default(tmp_path):
    loader = ConfigLoader(str(tmp_path / "absent.yaml"))
    loader.load()
    assert loader.get("limits.nothing", 5) == 5
    assert loader.get("limits.mub_order_cap.deeper") is None


def test_save_round_trip(tmp_path):
    loader = ConfigLoader(str(write_config(tmp_path, "mub:\n  seed: 11\n")))
    loader.load()
    out = tmp_path / "saved" / "config.yaml"
    loader.save(str(out))
    assert yaml.safe_load(out.read_text())["mub"]["seed"] == 11
    assert ConfigLoader(str(out)).load() == loader.config
