"""
Core Infrastructure Components
==============================

Foundations shared by every layer of Loewner-BT:

- :mod:`src.core.exceptions` - exception hierarchy for error handling
- :mod:`src.core.config` - YAML configuration with built-in defaults
- :mod:`src.core.logging` - rich console and file logging
- :mod:`src.core.parallel` - thread-pool helpers
- :mod:`src.core.linalg` - matrix-equation kernels
- :mod:`src.core.base_variant` - configuration and base class of the variants

Only the exceptions and the configuration are re-exported here; the other
modules are imported directly.

Example
-------
>>> from src.core import AppConfig, LoewnerBTError, load_config
>>>
>>> cfg = load_config()
>>> cfg.performance.max_workers
4

See Also
--------
src.variants : Balanced-truncation variants.
src.reduction : Square-root reduction and comparison.
"""

from src.core.config import AppConfig, load_config
from src.core.exceptions import (
    ConfigError,
    InterpolationError,
    LinalgError,
    LoewnerBTError,
    ReductionError,
    SamplingError,
    VariantError,
)

__all__ = [
    # Configuration
    "AppConfig",
    "load_config",
    # Exceptions - Base
    "LoewnerBTError",
    "ConfigError",
    # Exceptions - Families
    "LinalgError",
    "SamplingError",
    "InterpolationError",
    "VariantError",
    "ReductionError",
]
