"""
Epsilon Selection
=================

Upper bounds on the shift offset ``eps`` under which the block-diagonal
(modal) approximations of the interpolation framework hold, and the rule
that turns them into a value: ``eps = safety_factor * min(bounds)``.

Contexts
--------
``modal_a``
    Accuracy of ``S_v - 2 eps 1 1^T`` against its diagonal, and the
    frequency-separation condition of the modal state matrix.
``qv_dom``
    Block diagonal dominance of ``Q_v`` with coupling blocks ``M_ik``.
``tv_dom``
    Block diagonal dominance of the right transformation ``T_v``.
``xp_dom``
    Diagonal dominance and accuracy of the pole-placement matrix ``X_p``.
``gramian``
    Convergence of the projected Gramian to ``(eps / 2) I``.
``a_hat_rows``
    Row dominance of the projected state matrix on the imaginary axis.
``tv_ddp``
    Dominance and accuracy of ``T_v`` for imaginary-axis points.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Sequence

import numpy as np

from src.core.exceptions import (
    DuplicatePoints,
    EmptyFrequencies,
    InterpolationError,
    ZeroFrequency,
)

# Module logger
logger = logging.getLogger(__name__)

DEFAULT_SAFETY = 0.9


class EpsilonContext(str, Enum):
    """Approximation whose validity bounds epsilon."""

    MODAL_A = "modal_a"
    QV_DOM = "qv_dom"
    TV_DOM = "tv_dom"
    XP_DOM = "xp_dom"
    GRAMIAN = "gramian"
    A_HAT_ROWS = "a_hat_rows"
    TV_DDP = "tv_ddp"


@dataclass
class EpsilonPlan:
    """
    Selected epsilon and the bounds that produced it.

    Attributes
    ----------
    epsilon : float
        ``safety_factor * min(bounds)``.
    context : EpsilonContext
    delta : float
        Accuracy tolerance in (0, 1).
    omega_min : float
        Smallest absolute frequency.
    delta_min : float
        Smallest separation between two frequencies.
    bounds : dict
        Named upper bounds, all strictly above ``epsilon``.
    """

    epsilon: float
    context: EpsilonContext
    delta: float
    omega_min: float
    delta_min: float
    bounds: Dict[str, float] = field(default_factory=dict)
    safety_factor: float = DEFAULT_SAFETY

    @property
    def binding(self) -> str:
        """Name of the smallest bound."""
        return min(self.bounds, key=self.bounds.__getitem__)

    def to_dict(self) -> Dict[str, object]:
        return {
            "epsilon": self.epsilon,
            "context": self.context.value,
            "delta": self.delta,
            "omega_min": self.omega_min,
            "delta_min": self.delta_min,
            "bounds": dict(self.bounds),
            "binding": self.binding,
            "safety_factor": self.safety_factor,
        }


def _separations(omegas: np.ndarray) -> np.ndarray:
    """|omega_k - omega_i| with the diagonal set to inf."""
    diff = np.abs(omegas[:, None] - omegas[None, :])
    np.fill_diagonal(diff, np.inf)
    return diff


def _block_norms(coupling: np.ndarray, count: int) -> np.ndarray:
    """2-norms of the ``count x count`` blocks of a square matrix."""
    b = coupling.shape[0] // count
    blocks = coupling.reshape(count, b, count, b).transpose(0, 2, 1, 3)
    return np.linalg.norm(blocks, ord=2, axis=(2, 3))


def _qv_bound(inv_sep: np.ndarray, coupling: Optional[np.ndarray]) -> float:
    v = inv_sep.shape[0]
    if coupling is None:
        norms = np.ones((v, v))
    else:
        norms = _block_norms(np.asarray(coupling, dtype=complex), v)
    off = norms.copy()
    np.fill_diagonal(off, 0.0)
    row = 2.0 * np.sum(off * inv_sep, axis=1)
    return float(np.min(np.diag(norms) / row))


def _tv_bound(
    inv_sep: np.ndarray,
    p_blocks: Optional[Sequence[np.ndarray]],
    q_block: Optional[np.ndarray],
) -> float:
    v = inv_sep.shape[0]
    row = np.sum(inv_sep, axis=1)
    if q_block is None:
        q_block = np.eye(1)
    q_block = np.atleast_2d(np.asarray(q_block, dtype=complex))
    q_norm = float(np.linalg.norm(q_block, 2))
    b = q_block.shape[0]
    values = []
    for i in range(v):
        P = np.zeros((b, b)) if p_blocks is None else np.atleast_2d(p_blocks[i])
        t_ii = np.linalg.solve(np.eye(b) + P, q_block)
        values.append(np.linalg.norm(t_ii, 2) / (2.0 * q_norm * row[i]))
    return float(min(values))


def choose_epsilon(
    omegas: Sequence[float],
    context: EpsilonContext = EpsilonContext.GRAMIAN,
    delta: float = 0.1,
    v: Optional[int] = None,
    safety_factor: float = DEFAULT_SAFETY,
    coupling: Optional[np.ndarray] = None,
    p_blocks: Optional[Sequence[np.ndarray]] = None,
    q_block: Optional[np.ndarray] = None,
    k_p: float = 1.0,
    gamma: float = 1.0,
    sigma_q: float = 1.0,
) -> EpsilonPlan:
    """
    Choose epsilon for a context.

    Parameters
    ----------
    omegas : sequence of float
        Frequencies (imaginary parts of the points, conjugates included).
    context : EpsilonContext
        Which approximation the value must keep valid.
    delta : float, default=0.1
        Accuracy tolerance for the accuracy-type bounds.
    v : int, optional
        Point count; defaults to ``len(omegas)``.
    safety_factor : float, default=0.9
        Fraction of the binding bound that is used.
    coupling : np.ndarray, optional
        ``qv_dom`` only: the matrix ``M`` whose blocks couple the points
        (default ``L_v^* L_v``, all blocks of norm one).
    p_blocks, q_block : optional
        ``tv_dom`` only: the diagonal blocks ``P_i`` and the constant ``Q``
        of ``T_ii = (I + P_i)^{-1} Q`` (defaults ``0`` and ``I``).
    k_p, gamma, sigma_q : float
        ``tv_ddp`` only: norm bound on ``P_i``, norm bound on the inverse
        diagonal blocks and smallest singular value of ``Q``.

    Returns
    -------
    EpsilonPlan

    Raises
    ------
    EmptyFrequencies
        If ``omegas`` is empty.
    ZeroFrequency
        If a bound needs nonzero frequencies and one is zero.
    DuplicatePoints
        If two frequencies coincide.
    InterpolationError
        If a dominance bound is requested for fewer than two points.

    Examples
    --------
    >>> choose_epsilon([1.0, -1.0], EpsilonContext.MODAL_A, delta=0.1).epsilon
    0.045
    """
    w = np.asarray(omegas, dtype=float).ravel()
    if w.size == 0:
        raise EmptyFrequencies("No frequencies given")
    context = EpsilonContext(context)
    count = int(v) if v is not None else int(w.size)
    omega_min = float(np.min(np.abs(w)))

    if w.size < 2 or count < 2:
        raise InterpolationError(
            "Epsilon bounds need at least two points",
            details={"context": context.value, "v": count},
        )
    sep = _separations(w)
    delta_min = float(np.min(sep))
    if delta_min == 0.0:
        raise DuplicatePoints("Frequencies must be distinct", details={"context": context.value})
    inv_sep = 1.0 / sep

    def need_nonzero() -> None:
        if omega_min == 0.0:
            raise ZeroFrequency(
                "Bound needs nonzero frequencies",
                hint="drop omega = 0 or use another context",
                details={"context": context.value},
            )

    bounds: Dict[str, float] = {}
    if context == EpsilonContext.MODAL_A:
        need_nonzero()
        bounds["modal_accuracy"] = delta / (2.0 * (count - 1))
        bounds["modal_frequency"] = omega_min / np.sqrt(4.0 * (count - 1) ** 2 - 1.0)
    elif context == EpsilonContext.QV_DOM:
        bounds["qv_dominance"] = _qv_bound(inv_sep, coupling)
    elif context == EpsilonContext.TV_DOM:
        bounds["tv_dominance"] = _tv_bound(inv_sep, p_blocks, q_block)
    elif context == EpsilonContext.XP_DOM:
        bounds["xp_dominance"] = delta_min / (count - 1)
        bounds["xp_accuracy"] = delta * delta_min / np.sqrt(count - 1)
    elif context == EpsilonContext.GRAMIAN:
        bounds["gramian_dominance"] = delta_min / (4.0 * count)
        bounds["gramian_accuracy"] = delta * delta_min / (8.0 * count**2)
    elif context == EpsilonContext.A_HAT_ROWS:
        need_nonzero()
        bounds["row_accuracy"] = delta * omega_min / (count - 1)
        bounds["row_dominance"] = delta_min / (2.0 * (count - 1))
    elif context == EpsilonContext.TV_DDP:
        bounds["tv_ddp_dominance"] = delta_min / (2.0 * count * k_p)
        bounds["tv_ddp_accuracy"] = (
            delta * sigma_q * delta_min
            / (4.0 * count * k_p**2 * (count - 1) * gamma * (1.0 + gamma * k_p))
        )

    bounds = {k: float(b) for k, b in bounds.items()}
    plan = EpsilonPlan(
        epsilon=safety_factor * min(bounds.values()),
        context=context,
        delta=float(delta),
        omega_min=omega_min,
        delta_min=delta_min,
        bounds=bounds,
        safety_factor=safety_factor,
    )
    logger.debug(f"epsilon={plan.epsilon:.3e} ({context.value}, binding {plan.binding})")
    return plan
