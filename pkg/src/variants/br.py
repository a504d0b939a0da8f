"""
Bounded-Real Variant
====================

Bounded-real balanced truncation for models with ``||D|| < 1``.

Right coupling: gain ``-D^T R_p^{-1}``, input scale ``R_b^{1/2}``,
output scale ``R_p^{-1/2}``. Left coupling: gain ``-R_q^{-1} D^T``,
input scale ``R_c^{1/2}``, output scale ``R_q^{-1/2}``. With
``R_p = I - D D^T``, ``R_q = I - D^T D``, ``R_b = I + D^T R_p^{-1} D``
and ``R_c = I + D R_q^{-1} D^T``.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from src.core.base_variant import FactorPair, Variant, VariantConfig
from src.core.linalg import inv_sqrt_pd, sqrt_psd
from src.sampling.loewner import LoewnerQuadruple
from src.variants.coupled import CoupledVariant, SideCoupling


class BRVariant(CoupledVariant):
    """Bounded-real balanced truncation."""

    name = Variant.BR

    def right_coupling(self) -> Optional[SideCoupling]:
        t = self.terms
        return SideCoupling(
            gain=-t.D.conj().T @ np.linalg.inv(t.Rp),
            input_scale=sqrt_psd(t.Rb),
            output_scale=inv_sqrt_pd(t.Rp, "I - D D^T"),
        )

    def left_coupling(self) -> Optional[SideCoupling]:
        t = self.terms
        return SideCoupling(
            gain=-np.linalg.solve(t.Rq, t.D.conj().T),
            input_scale=sqrt_psd(t.Rc),
            output_scale=inv_sqrt_pd(t.Rq, "I - D^T D"),
        )


def br_factors(loewner: LoewnerQuadruple, config: Optional[VariantConfig] = None) -> FactorPair:
    """Bounded-real factors of a Loewner quadruple."""
    return BRVariant(loewner, config or VariantConfig(variant=Variant.BR)).compute()
