"""
Variant Registry
================

Maps variant names to implementations.
"""

from __future__ import annotations

import logging
from typing import Dict, List, Type, Union

from src.core.base_variant import BaseVariant, FactorPair, Variant, VariantConfig
from src.core.exceptions import ConfigError
from src.sampling.loewner import LoewnerQuadruple
from src.variants.br import BRVariant
from src.variants.bst import BSTVariant
from src.variants.bt import BTVariant
from src.variants.lqg import HinfVariant, LQGVariant
from src.variants.pr import PRVariant
from src.variants.sw import SWVariant

# Module logger
logger = logging.getLogger(__name__)

VARIANTS: Dict[Variant, Type[BaseVariant]] = {
    Variant.BT: BTVariant,
    Variant.LQG: LQGVariant,
    Variant.HINF: HinfVariant,
    Variant.PR: PRVariant,
    Variant.BR: BRVariant,
    Variant.SW: SWVariant,
    Variant.BST: BSTVariant,
}


def available_variants() -> List[str]:
    return [v.value for v in VARIANTS]


def get_variant(name: Union[Variant, str]) -> Type[BaseVariant]:
    """
    Variant class for a name.

    Raises
    ------
    ConfigError
        If the name is unknown.
    """
    try:
        return VARIANTS[Variant(name)]
    except ValueError as e:
        raise ConfigError(
            f"Unknown variant {name!r}",
            details={"available": available_variants()},
        ) from e


def compute_factors(loewner: LoewnerQuadruple, config: VariantConfig) -> FactorPair:
    """Factor pair of the configured variant."""
    cls = get_variant(config.variant)
    return cls(loewner, config).compute()
