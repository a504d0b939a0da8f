"""
Balanced Truncation Variant
===========================

Classical balanced truncation from samples.

- ADI points: ``L_p L_p* = Q_v^{-1}`` and ``L_q L_q* = P_w^{-1}`` where
  ``Q_v``/``P_w`` solve the Cauchy-type PORK Lyapunov equations.
- Imaginary-axis points: ``P_hat`` and ``Q_hat`` of the pole-placed (or
  modal, or supplied) interpolants.
- Fast path: ``L_p = sqrt(2 Re sigma_i) I`` (ADI) or ``sqrt(eps / 2) I``.

The class also carries the generic direct route used by every variant:
the model-based Gramian equations applied to the two interpolants.
"""

from __future__ import annotations

import logging
from typing import Optional, Tuple

import numpy as np

from src.core.base_variant import (
    BaseVariant,
    FactorPair,
    Variant,
    VariantConfig,
)
from src.core.exceptions import SingularPw, SingularQv
from src.core.linalg import psd_factor
from src.interpolation.pork import QV_HINT, pork_gramian
from src.reduction.gramians import controllability_gramian, observability_gramian
from src.sampling.loewner import LoewnerQuadruple

# Module logger
logger = logging.getLogger(__name__)

Factors = Tuple[np.ndarray, np.ndarray]


class BTVariant(BaseVariant):
    """
    Balanced truncation.

    Attributes
    ----------
    right_gramian : np.ndarray
        ``Q_v^{-1}`` (ADI), ``P_hat`` (imaginary axis) or the diagonal
        closed form, set by the right-side computation.
    """

    name = Variant.BT

    @property
    def kappa(self) -> float:
        return self.config.kappa

    def _identity(self, dim: int) -> np.ndarray:
        return np.eye(dim, dtype=complex)

    # ---------------------------------------------------------------- ADI

    def adi_right(self, fast: bool) -> Factors:
        sv = self.right_shift
        Tv = self._identity(sv.dim)
        if fast:
            scale = 2.0 * sv.diagonal.real
            self.right_gramian = np.diag(scale).astype(complex)
            return Tv, np.diag(np.sqrt(scale)).astype(complex)
        self.right_gramian, Lp = self.inverse_factor(pork_gramian(sv), SingularQv, "Q_v", QV_HINT)
        return Tv, Lp

    def adi_left(self, fast: bool) -> Factors:
        sw = self.left_shift
        Tw = self._identity(sw.dim)
        if fast:
            return Tw, np.diag(np.sqrt(2.0 * sw.diagonal.real)).astype(complex)
        _, Lq = self.inverse_factor(pork_gramian(sw), SingularPw, "P_w", QV_HINT)
        return Tw, Lq

    # ---------------------------------------------------------------- DDP

    def ddp_right(self, fast: bool) -> Factors:
        if not fast:
            return self.direct_right()
        dim = self.right_shift.dim
        self.right_gramian = 0.5 * self.eps * self._identity(dim)
        return self._identity(dim), np.sqrt(0.5 * self.eps) * self._identity(dim)

    def ddp_left(self, fast: bool) -> Factors:
        if not fast:
            return self.direct_left()
        dim = self.left_shift.dim
        return self._identity(dim), np.sqrt(0.5 * self.eps) * self._identity(dim)

    # ------------------------------------------------------------- direct

    def projected_pc(self) -> Optional[np.ndarray]:
        """Projected ``P C^H`` for the left equations; only BST needs it."""
        return None

    def direct_right(self) -> Factors:
        sv = self.right_shift
        fp = self.right_zeta
        P = controllability_gramian(
            self.name,
            fp.state_matrix(sv),
            fp.zeta,
            self.loewner.CV,
            self.loewner.D,
            kappa=self.kappa,
            terms=self.terms,
        )
        self.right_gramian = P
        return self._identity(sv.dim), psd_factor(P)

    def direct_left(self) -> Factors:
        sw = self.left_shift
        fp = self.left_zeta
        Q = observability_gramian(
            self.name,
            fp.state_matrix(sw),
            self.loewner.WB,
            fp.zeta,
            self.loewner.D,
            kappa=self.kappa,
            terms=self.terms,
            pc=self.projected_pc(),
        )
        return self._identity(sw.dim), psd_factor(Q)


def bt_factors(loewner: LoewnerQuadruple, config: Optional[VariantConfig] = None) -> FactorPair:
    """Balanced-truncation factors of a Loewner quadruple."""
    return BTVariant(loewner, config or VariantConfig(variant=Variant.BT)).compute()
