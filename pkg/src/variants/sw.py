"""
Self-Weighted Variant
=====================

Self-weighted balanced truncation (square models, invertible ``D``):
the controllability side is plain BT; the observability side balances
the inverse system, reached through the left transformation with gain
``D^{-1}`` and input scale ``D^{-T}``. The fast-path blocks are
``T_ii = G(mu_i)^{-H}``.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from src.core.base_variant import FactorPair, Variant, VariantConfig
from src.sampling.loewner import LoewnerQuadruple
from src.variants.coupled import CoupledVariant, SideCoupling


class SWVariant(CoupledVariant):
    """Self-weighted balanced truncation."""

    name = Variant.SW

    def left_coupling(self) -> Optional[SideCoupling]:
        D_inv = np.linalg.inv(self.terms.D)
        return SideCoupling(gain=D_inv, input_scale=D_inv.conj().T)


def sw_factors(loewner: LoewnerQuadruple, config: Optional[VariantConfig] = None) -> FactorPair:
    """Self-weighted factors of a Loewner quadruple."""
    return SWVariant(loewner, config or VariantConfig(variant=Variant.SW)).compute()
