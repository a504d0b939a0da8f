"""
Configuration Loading
=====================

Loads the optional YAML configuration file and merges it over built-in
defaults. The file layout mirrors ``config.example.yml``.

Discovery order
---------------
1. An explicit path (``--config`` on the command line).
2. ``./config.yml`` in the working directory.
3. ``~/.loewner-bt/config.yml``.

If none exists the defaults are used. The ``MOR_NUM_THREADS`` environment
variable overrides ``performance.max_workers``.

Example
-------
>>> from src.core.config import load_config
>>> cfg = load_config()
>>> cfg.tolerances.psd_clip
1e-10
"""

from __future__ import annotations

import copy
import logging
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from src.core.exceptions import ConfigError

# Module logger
logger = logging.getLogger(__name__)

ENV_THREADS = "MOR_NUM_THREADS"
DEFAULT_LOCATIONS = (
    Path("config.yml"),
    Path.home() / ".loewner-bt" / "config.yml",
)


@dataclass
class Tolerances:
    """Numerical thresholds shared by the kernels."""

    hermite_rel: float = 1e-8
    psd_clip: float = 1e-10
    rank_guard: float = 1e-12
    cond_guard: float = 1e12
    realify_residue: float = 1e-8


@dataclass
class EpsilonSettings:
    """Selection rule for the shift offset epsilon."""

    safety_factor: float = 0.9
    default_delta: float = 0.1


@dataclass
class HinfSettings:
    """Grid sweep used to estimate H-infinity norms."""

    grid_points: int = 400
    refine_iterations: int = 60


@dataclass
class PerformanceSettings:
    """Thread-pool sizing."""

    max_workers: int = 4


@dataclass
class OutputSettings:
    """Result file settings."""

    directory: str = "."
    float_digits: int = 17


@dataclass
class AppConfig:
    """Complete application configuration."""

    tolerances: Tolerances = field(default_factory=Tolerances)
    epsilon: EpsilonSettings = field(default_factory=EpsilonSettings)
    hinf: HinfSettings = field(default_factory=HinfSettings)
    performance: PerformanceSettings = field(default_factory=PerformanceSettings)
    output: OutputSettings = field(default_factory=OutputSettings)
    source: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to a plain dictionary (for embedding in outputs)."""
        return asdict(self)


_SECTIONS = {
    "tolerances": Tolerances,
    "epsilon": EpsilonSettings,
    "hinf": HinfSettings,
    "performance": PerformanceSettings,
    "output": OutputSettings,
}


def _find_config(path: Optional[str]) -> Optional[Path]:
    if path is not None:
        candidate = Path(path)
        if not candidate.is_file():
            raise ConfigError(
                "Configuration file not found", details={"path": str(candidate)}
            )
        return candidate
    for candidate in DEFAULT_LOCATIONS:
        if candidate.is_file():
            return candidate
    return None


def _build_section(name: str, raw: Any) -> Any:
    section_cls = _SECTIONS[name]
    if raw is None:
        return section_cls()
    if not isinstance(raw, dict):
        raise ConfigError(
            f"Section '{name}' must be a mapping",
            details={"section": name, "type": type(raw).__name__},
        )
    defaults = asdict(section_cls())
    unknown = set(raw) - set(defaults)
    if unknown:
        raise ConfigError(
            f"Unknown keys in section '{name}'",
            details={"section": name, "keys": sorted(unknown)},
        )
    merged = copy.deepcopy(defaults)
    for key, value in raw.items():
        expected = type(defaults[key])
        try:
            merged[key] = expected(value)
        except (TypeError, ValueError) as e:
            raise ConfigError(
                f"Invalid value for {name}.{key}",
                details={"value": value, "expected": expected.__name__},
            ) from e
    return section_cls(**merged)


def load_config(path: Optional[str] = None) -> AppConfig:
    """
    Load configuration from YAML, falling back to defaults.

    Parameters
    ----------
    path : str, optional
        Explicit configuration file. Missing explicit files are an error;
        missing default-location files are not.

    Returns
    -------
    AppConfig
        Merged configuration.

    Raises
    ------
    ConfigError
        If the file is not valid YAML or contains unknown sections/keys.
    """
    config_path = _find_config(path)
    raw: Dict[str, Any] = {}

    if config_path is not None:
        try:
            with open(config_path, encoding="utf-8") as f:
                loaded = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(
                "Configuration file is not valid YAML",
                details={"path": str(config_path), "error": str(e)},
            ) from e
        if loaded is not None and not isinstance(loaded, dict):
            raise ConfigError(
                "Configuration root must be a mapping",
                details={"path": str(config_path)},
            )
        raw = loaded or {}
        logger.debug(f"Loaded configuration from {config_path}")

    unknown = set(raw) - set(_SECTIONS)
    if unknown:
        raise ConfigError(
            "Unknown configuration sections",
            details={"sections": sorted(unknown)},
        )

    sections = {name: _build_section(name, raw.get(name)) for name in _SECTIONS}
    config = AppConfig(**sections, source=str(config_path) if config_path else None)

    env_threads = os.environ.get(ENV_THREADS)
    if env_threads:
        try:
            config.performance.max_workers = max(1, int(env_threads))
        except ValueError as e:
            raise ConfigError(
                f"{ENV_THREADS} must be an integer",
                details={"value": env_threads},
            ) from e

    return config
