"""
Balancing Variants
==================

Implementations of the seven balanced-truncation variants on sampled
data. Each variant turns a Loewner quadruple into right and left factors
for the square-root step.

Available Variants
------------------
BTVariant
    Classical balanced truncation.
LQGVariant, HinfVariant
    LQG and H-infinity balanced truncation.
PRVariant
    Positive-real balanced truncation.
BRVariant
    Bounded-real balanced truncation.
SWVariant
    Self-weighted balanced truncation.
BSTVariant
    Balanced stochastic truncation.

Example
-------
>>> from src.sampling.loewner import assemble
>>> from src.core.base_variant import VariantConfig
>>> from src.variants import compute_factors
>>>
>>> loewner = assemble(samples)
>>> pair = compute_factors(loewner, VariantConfig(variant="lqg", mode="adi"))
>>> pair.Lp.shape

Adding New Variants
-------------------
1. Create a module in this directory.
2. Subclass ``BTVariant`` (or ``CoupledVariant`` when the projected
   equations need a transformation) and set ``name``.
3. Register the class in ``registry.VARIANTS``.

See Also
--------
src.core.base_variant : Base class for all variants.
"""

from src.variants.br import BRVariant, br_factors
from src.variants.bst import BSTVariant, bst_factors
from src.variants.bt import BTVariant, bt_factors
from src.variants.coupled import CoupledVariant, SideCoupling
from src.variants.lqg import HinfVariant, LQGVariant, hinf_factors, lqg_factors
from src.variants.pr import PRVariant, pr_factors
from src.variants.registry import available_variants, compute_factors, get_variant
from src.variants.sw import SWVariant, sw_factors

__all__ = [
    "BRVariant",
    "BSTVariant",
    "BTVariant",
    "CoupledVariant",
    "HinfVariant",
    "LQGVariant",
    "PRVariant",
    "SWVariant",
    "SideCoupling",
    "available_variants",
    "br_factors",
    "bst_factors",
    "bt_factors",
    "compute_factors",
    "get_variant",
    "hinf_factors",
    "lqg_factors",
    "pr_factors",
    "sw_factors",
]
