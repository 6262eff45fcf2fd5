"""
Configuration Loader for mubgeo
Loads and validates configuration from YAML and environment variables
"""

import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict

import yaml

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class ConfigLoader:
    """Load and manage configuration"""

    DEFAULTS: Dict[str, Any] = {
        "limits": {
            "field_order_cap": 65536,
            "mub_order_cap": 16,
            "mate_order_cap": 10,
            "reduced_order_cap": 6,
            "sic_order_cap": 9,
        },
        "tolerances": {
            "spectral": 1e-10,
            "verification": 1e-10,
            "sic": 1e-8,
        },
        "mub": {
            "seed": 2718,
            "max_retries": 8,
        },
        "sic": {
            "max_selections": 31104,
        },
        "tarry": {
            "default_order": 6,
            "jobs": None,  # None = all cores
            "chunk_size": 256,
        },
        "logging": {
            "level": "INFO",
            "file": "./logs/mubgeo.log",
            "max_bytes": 10485760,
            "backup_count": 5,
        },
        "cache": {
            "enabled": False,
            "cache_dir": "./data/cache",
        },
    }

    # env var -> (dotted key, converter)
    ENV_OVERRIDES = {
        "MUBGEO_CACHE_DIR": ("cache.cache_dir", str),
        "MUBGEO_LOG_LEVEL": ("logging.level", str.upper),
        "MUBGEO_LOG_FILE": ("logging.file", str),
        "MUBGEO_JOBS": ("tarry.jobs", int),
        "MUBGEO_SEED": ("mub.seed", int),
        "MUBGEO_TOLERANCE": ("tolerances.verification", float),
    }

    def __init__(self, config_path: str = None):
        """
        Initialize configuration loader

        Args:
            config_path: Path to config YAML file
        """
        self.logger = logging.getLogger(__name__)

        if config_path is None:
            # Default to config/config.yaml relative to project root
            project_root = Path(__file__).parent.parent
            config_path = project_root / "config" / "config.yaml"

        self.config_path = Path(config_path)
        self.config = {}

    def load(self) -> Dict[str, Any]:
        """
        Load configuration from YAML file and environment variables

        Returns:
            Configuration dictionary with defaults filled in
        """
        loaded = {}
        if self.config_path.exists():
            self.logger.info(f"Loading configuration from {self.config_path}")
            with open(self.config_path, 'r') as f:
                loaded = yaml.safe_load(f) or {}
        else:
            self.logger.warning(f"Config file not found: {self.config_path}")

        self.config = _deep_merge(copy.deepcopy(self.DEFAULTS), loaded)

        self._load_from_env()
        self._validate()

        return self.config

    def _load_from_env(self):
        """Load configuration from environment variables"""
        errors = []
        for env_name, (key, convert) in self.ENV_OVERRIDES.items():
            raw = os.getenv(env_name)
            if not raw:
                continue
            try:
                self._set(key, convert(raw))
            except ValueError:
                errors.append(f"{env_name}={raw!r} is not a valid value for {key}")

        if os.getenv("MUBGEO_CACHE_DIR"):
            self._set("cache.enabled", True)

        if errors:
            error_msg = "Invalid environment overrides:\n" + "\n".join(f"  - {e}" for e in errors)
            self.logger.error(error_msg)
            raise ValueError(error_msg)

    def _set(self, key: str, value: Any):
        section = self.config
        *parents, leaf = key.split(".")
        for k in parents:
            section = section.setdefault(k, {})
        section[leaf] = value

    def _validate(self):
        """Validate configuration"""
        errors = []

        for name, value in self.config.get("limits", {}).items():
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                errors.append(f"limits.{name} must be a positive integer, got {value!r}")

        for name, value in self.config.get("tolerances", {}).items():
            if not isinstance(value, (int, float)) or isinstance(value, bool) or value <= 0:
                errors.append(f"tolerances.{name} must be a positive number, got {value!r}")

        seed = self.get("mub.seed")
        if not isinstance(seed, int) or seed < 0:
            errors.append(f"mub.seed must be a non-negative integer, got {seed!r}")

        retries = self.get("mub.max_retries")
        if not isinstance(retries, int) or retries < 1:
            errors.append(f"mub.max_retries must be a positive integer, got {retries!r}")

        selections = self.get("sic.max_selections")
        if selections is not None and (not isinstance(selections, int) or selections < 1):
            errors.append(f"sic.max_selections must be a positive integer or null, got {selections!r}")

        jobs = self.get("tarry.jobs")
        if jobs is not None and (not isinstance(jobs, int) or jobs < 1):
            errors.append(f"tarry.jobs must be a positive integer or null, got {jobs!r}")

        chunk_size = self.get("tarry.chunk_size")
        if not isinstance(chunk_size, int) or chunk_size < 1:
            errors.append(f"tarry.chunk_size must be a positive integer, got {chunk_size!r}")

        level = str(self.get("logging.level", "")).upper()
        if level not in LOG_LEVELS:
            errors.append(f"logging.level must be one of {', '.join(LOG_LEVELS)}, got {level!r}")

        if errors:
            error_msg = "Configuration validation failed:\n" + "\n".join(f"  - {e}" for e in errors)
            self.logger.error(error_msg)
            raise ValueError(error_msg)

        self.logger.info("Configuration validated successfully")

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value by key

        Args:
            key: Configuration key (supports dot notation, e.g., 'limits.mub_order_cap')
            default: Default value if key not found

        Returns:
            Configuration value
        """
        keys = key.split(".")
        value = self.config

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def save(self, output_path: str = None):
        """
        Save configuration to YAML file

        Args:
            output_path: Output path (default: overwrite current config)
        """
        if output_path is None:
            output_path = self.config_path

        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)

        with open(output_path, 'w') as f:
            yaml.dump(self.config, f, default_flow_style=False, sort_keys=False)

        self.logger.info(f"Configuration saved to {output_path}")


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            _deep_merge(base[key], value)
        else:
            base[key] = value
    return base
