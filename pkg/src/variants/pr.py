"""
Positive-Real Variant
=====================

Positive-real balanced truncation for square models with
``R = D + D^T`` positive definite. Both sides are coupled with gain
``R^{-1}`` and input and output scale ``R^{-1/2}``; the reduced model of
a positive-real system stays positive-real unless the fast path is used.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from src.core.base_variant import FactorPair, Variant, VariantConfig
from src.core.linalg import inv_sqrt_pd
from src.sampling.loewner import LoewnerQuadruple
from src.variants.coupled import CoupledVariant, SideCoupling


class PRVariant(CoupledVariant):
    """Positive-real balanced truncation."""

    name = Variant.PR

    def _coupling(self) -> SideCoupling:
        R = self.terms.R
        scale = inv_sqrt_pd(R, "D + D^T")
        return SideCoupling(gain=np.linalg.inv(R), input_scale=scale, output_scale=scale)

    def right_coupling(self) -> Optional[SideCoupling]:
        return self._coupling()

    def left_coupling(self) -> Optional[SideCoupling]:
        return self._coupling()


def pr_factors(loewner: LoewnerQuadruple, config: Optional[VariantConfig] = None) -> FactorPair:
    """Positive-real factors of a Loewner quadruple."""
    return PRVariant(loewner, config or VariantConfig(variant=Variant.PR)).compute()
