"""
LQG and H-infinity Variants
===========================

LQG balanced truncation balances the filter and control Riccati
solutions; H-infinity balanced truncation is the same computation with
the quadratic terms weighted by ``kappa = 1 - gamma^-2``.

ADI points
    ``-S_v* Q_v - Q_v S_v + L_v^T L_v + kappa CV* CV = 0`` and
    ``-S_w P_w - P_w S_w* + L_w L_w^T + kappa WB WB* = 0``.
Imaginary-axis points
    Riccati equations of the interpolants (the direct equations).
Fast path
    ``Q_ii^{-1} = 2 Re(sigma_i) (I + kappa H_i* H_i)^{-1}``, or on the axis
    ``P_ii = eps (I + (I + kappa H_i* H_i)^{1/2})^{-1}``; the left side
    uses ``H_i H_i*``.
"""

from __future__ import annotations

import logging
from typing import List, Optional

import numpy as np

from src.core.base_variant import FactorPair, Variant, VariantConfig, block_diag
from src.core.exceptions import SingularPw, SingularQv
from src.core.linalg import hermitian_part, psd_factor
from src.interpolation.pork import QV_HINT
from src.sampling.loewner import LoewnerQuadruple
from src.variants.bt import BTVariant, Factors

# Module logger
logger = logging.getLogger(__name__)


class LQGVariant(BTVariant):
    """LQG balanced truncation."""

    name = Variant.LQG

    def _right_weights(self) -> List[np.ndarray]:
        return [self.kappa * H.conj().T @ H for H in self.right_values()]

    def _left_weights(self) -> List[np.ndarray]:
        return [self.kappa * H @ H.conj().T for H in self.left_values()]

    @staticmethod
    def _adi_block(X: np.ndarray, s: complex) -> np.ndarray:
        return hermitian_part(2.0 * s.real * np.linalg.inv(np.eye(X.shape[0]) + X))

    def adi_right(self, fast: bool) -> Factors:
        sv = self.right_shift
        Tv = self._identity(sv.dim)
        if fast:
            blocks = [self._adi_block(X, s) for X, s in zip(self._right_weights(), sv.points)]
            self.right_gramian = block_diag(blocks)
            return Tv, block_diag([psd_factor(b) for b in blocks])
        CV = self.loewner.CV
        Qv = sv.lyapunov(sv.L.T @ sv.L + self.kappa * CV.conj().T @ CV)
        self.right_gramian, Lp = self.inverse_factor(Qv, SingularQv, "Q_v", QV_HINT)
        return Tv, Lp

    def adi_left(self, fast: bool) -> Factors:
        sw = self.left_shift
        Tw = self._identity(sw.dim)
        if fast:
            blocks = [self._adi_block(X, s) for X, s in zip(self._left_weights(), sw.points)]
            return Tw, block_diag([psd_factor(b) for b in blocks])
        WB = self.loewner.WB
        Pw = sw.lyapunov(sw.L @ sw.L.T + self.kappa * WB @ WB.conj().T)
        _, Lq = self.inverse_factor(Pw, SingularPw, "P_w", QV_HINT)
        return Tw, Lq

    def ddp_right(self, fast: bool) -> Factors:
        if not fast:
            return self.direct_right()
        blocks = [self.closed_form_gramian(X, self.eps, +1) for X in self._right_weights()]
        self.right_gramian = block_diag(blocks)
        return self._identity(self.right_shift.dim), block_diag([psd_factor(b) for b in blocks])

    def ddp_left(self, fast: bool) -> Factors:
        if not fast:
            return self.direct_left()
        blocks = [self.closed_form_gramian(X, self.eps, +1) for X in self._left_weights()]
        return self._identity(self.left_shift.dim), block_diag([psd_factor(b) for b in blocks])


class HinfVariant(LQGVariant):
    """H-infinity balanced truncation (``gamma > 1`` required)."""

    name = Variant.HINF


def lqg_factors(loewner: LoewnerQuadruple, config: Optional[VariantConfig] = None) -> FactorPair:
    """LQG factors of a Loewner quadruple."""
    return LQGVariant(loewner, config or VariantConfig(variant=Variant.LQG)).compute()


def hinf_factors(loewner: LoewnerQuadruple, config: VariantConfig) -> FactorPair:
    """H-infinity factors; ``config`` must carry ``gamma``."""
    return HinfVariant(loewner, config).compute()
