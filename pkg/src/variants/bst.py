"""
Balanced Stochastic Variant
===========================

Balanced stochastic truncation (``D D^T`` invertible). The right side is
plain BT; the left side needs the right Gramian through

    X = WV P_hat CV* + WB D^T

(``P_hat = Q_v^{-1}`` for ADI points), so the two sides run one after
the other. The left coupling has gain ``R_s^{-1}`` and input and output
scale ``R_s^{-1/2}`` with ``R_s = D D^T``.

The fast path uses the diagonal blocks
``X_i = WV_ii P_hat_ii CV_i* + WB_i D^T`` and therefore needs as many
left as right points.
"""

from __future__ import annotations

import logging
from typing import List, Optional, Tuple

import numpy as np

from src.core.base_variant import FactorPair, Variant, VariantConfig
from src.core.exceptions import AssumptionViolated
from src.core.linalg import inv_sqrt_pd
from src.sampling.loewner import LoewnerQuadruple
from src.variants.bt import Factors
from src.variants.coupled import CoupledVariant, SideCoupling

# Module logger
logger = logging.getLogger(__name__)


class BSTVariant(CoupledVariant):
    """Balanced stochastic truncation."""

    name = Variant.BST

    def _require_right_gramian(self) -> np.ndarray:
        if self.right_gramian is None:
            self.right_factors()
        return self.right_gramian

    def projected_pc(self) -> Optional[np.ndarray]:
        q = self.loewner
        return q.WV @ self._require_right_gramian() @ q.CV.conj().T

    def left_coupling(self) -> Optional[SideCoupling]:
        t = self.terms
        scale = inv_sqrt_pd(t.Rs, "D D^T")
        return SideCoupling(gain=np.linalg.inv(t.Rs), input_scale=scale, output_scale=scale)

    def left_coupling_data(self) -> np.ndarray:
        return self.projected_pc() + self.loewner.WB @ self.terms.D.conj().T

    def left_coupling_blocks(self) -> List[np.ndarray]:
        q = self.loewner
        if q.v != q.w:
            raise AssumptionViolated(
                "BST fast path needs as many left as right points",
                variant=self.name.value,
                details={"v": q.v, "w": q.w},
            )
        P = self._require_right_gramian()
        m, p = q.m, q.p
        Dh = self.terms.D.conj().T
        blocks = []
        for i, (H_right, H_left) in enumerate(zip(self.right_values(), self.left_values())):
            P_ii = P[i * m:(i + 1) * m, i * m:(i + 1) * m]
            blocks.append(q.block("WV", i, i) @ P_ii @ H_right.conj().T + H_left @ Dh)
        logger.debug(f"Built {len(blocks)} stochastic coupling blocks of size {p}")
        return blocks

    def run_sides(self) -> Tuple[Factors, Factors]:
        right = self.right_factors()
        return right, self.left_factors()


def bst_factors(loewner: LoewnerQuadruple, config: Optional[VariantConfig] = None) -> FactorPair:
    """Balanced stochastic factors of a Loewner quadruple."""
    return BSTVariant(loewner, config or VariantConfig(variant=Variant.BST)).compute()
