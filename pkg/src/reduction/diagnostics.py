"""
Structure Diagnostics
=====================

Checks of the properties the structured variants preserve: passivity
(positive-real lemma), contractivity (``||G||_inf <= 1``) and minimum
phase.
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence, Union

import numpy as np

from src.core.base_variant import Variant
from src.core.exceptions import LoewnerBTError
from src.reduction.error import hinf_norm
from src.reduction.gramians import observability_gramian
from src.reduction.model import Field, ReducedModel
from src.sampling.statespace import StateSpace

# Module logger
logger = logging.getLogger(__name__)

Model = Union[ReducedModel, StateSpace]


def _as_rom(model: Model) -> ReducedModel:
    if isinstance(model, ReducedModel):
        return model
    return ReducedModel(A=model.A, B=model.B, C=model.C, D=model.D, field=Field.REAL)


def positive_real_certificate(model: Model) -> Optional[np.ndarray]:
    """
    Stabilizing solution of the positive-real Riccati equation, or None.

    None when the model is unstable, not square, has ``D + D^T`` not
    positive definite, or the Riccati equation has no stabilizing solution.
    """
    rom = _as_rom(model)
    if not rom.is_stable():
        return None
    try:
        return observability_gramian(Variant.PR, rom.A, rom.B, rom.C, rom.D)
    except LoewnerBTError as e:
        logger.debug(f"No positive-real certificate: {e}")
        return None


def is_positive_real(model: Model, rtol: float = 1e-10) -> bool:
    """True if a positive definite PR Riccati solution exists."""
    X = positive_real_certificate(model)
    if X is None:
        return False
    if X.size == 0:
        return True
    lam = np.linalg.eigvalsh(0.5 * (X + X.conj().T))
    ok = bool(lam.min() > rtol * max(float(np.abs(lam).max()), 1.0))
    if not ok:
        logger.warning(f"Positive-real check failed: min eig {lam.min():.3e}")
    return ok


def is_bounded_real(model: Model, grid: Optional[Sequence[float]] = None, tol: float = 1e-8) -> bool:
    """True if the model is stable and its grid-sup gain is at most ``1 + tol``."""
    rom = _as_rom(model)
    if not rom.is_stable():
        return False
    gain = hinf_norm(rom, grid).value
    if gain > 1.0 + tol:
        logger.warning(f"Bounded-real check failed: gain {gain:.6f}")
        return False
    return True


def is_minimum_phase(model: Model) -> bool:
    """
    True if every transmission zero lies in the open left half-plane.

    Raises
    ------
    AssumptionViolated
        If the model is not square or ``D`` is singular.
    """
    zeros = _as_rom(model).zeros()
    return zeros.size == 0 or bool(np.max(zeros.real) < 0)
