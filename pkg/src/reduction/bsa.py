"""
Balanced Square-Root Reduction
==============================

The square-root step shared by every pipeline. Given factors
``Z_v = T_v L_p`` and ``Z_w = T_w L_q``::

    Z_w* WV Z_v = U S V*
    W_r = Z_w U_1 S_1^{-1/2},   V_r = Z_v V_1 S_1^{-1/2}
    A_r = W_r* WAV V_r,  B_r = W_r* WB,  C_r = CV V_r,  D_r = D

``S`` holds the Hankel-like values of the variant. With the intrusive
quadruple ``(I, A, B, C)`` and exact Gramian factors this is classical
square-root balanced truncation.
"""

from __future__ import annotations

import logging
from typing import Optional, Union

import numpy as np

from src.core.base_variant import FactorPair
from src.core.exceptions import OrderOutOfRange, RankDeficient
from src.core.linalg import svd
from src.reduction.model import Field, ReducedModel
from src.sampling.loewner import LoewnerQuadruple

# Module logger
logger = logging.getLogger(__name__)

RANK_GUARD = 1e-12


def numerical_rank(values: np.ndarray, rank_guard: float = RANK_GUARD) -> int:
    """Count of singular values above ``rank_guard * values[0]``."""
    values = np.asarray(values, dtype=float)
    if values.size == 0 or values[0] <= 0.0:
        return 0
    return int(np.sum(values > rank_guard * values[0]))


def select_order(values: np.ndarray, threshold: float) -> int:
    """
    Smallest ``r`` whose trailing values carry relative energy at most ``threshold``.

    ``sum_{k > r} s_k^2 / sum_k s_k^2 <= threshold``.

    Examples
    --------
    >>> select_order(np.array([1.0, 0.1, 0.01]), 0.05)
    1
    """
    values = np.asarray(values, dtype=float)
    if not 0.0 < threshold < 1.0:
        raise OrderOutOfRange("Energy threshold must lie in (0, 1)", details={"threshold": threshold})
    energy = values**2
    total = float(np.sum(energy))
    if total == 0.0:
        return 0
    tail = (total - np.cumsum(energy)) / total
    return int(np.argmax(tail <= threshold)) + 1


def resolve_order(
    values: np.ndarray,
    order: Optional[Union[int, float]],
    rank_guard: float = RANK_GUARD,
) -> int:
    """
    Reduced order for a request: an integer, an energy threshold, or None
    (the numerical rank).

    Raises
    ------
    OrderOutOfRange
        If an integer order is below one.
    RankDeficient
        If the order exceeds the numerical rank.
    """
    rank = numerical_rank(values, rank_guard)
    if order is None:
        r = rank
    elif isinstance(order, (int, np.integer)) and not isinstance(order, bool):
        r = int(order)
        if r < 1:
            raise OrderOutOfRange("Order must be at least 1", details={"order": r})
    else:
        r = min(select_order(values, float(order)), rank)
    if r > rank or r < 1:
        raise RankDeficient(
            "Requested order exceeds the numerical rank of the projected data",
            requested=r,
            achievable_rank=rank,
        )
    return r


def bsa_reduce(
    loewner: LoewnerQuadruple,
    factors: FactorPair,
    order: Optional[Union[int, float]] = None,
    rank_guard: float = RANK_GUARD,
) -> ReducedModel:
    """
    Reduce a quadruple with a factor pair.

    Parameters
    ----------
    loewner : LoewnerQuadruple
    factors : FactorPair
    order : int or float, optional
        Reduced order, energy threshold, or None for the numerical rank.
    rank_guard : float, default=1e-12
        Relative cut-off below which singular values count as zero.

    Returns
    -------
    ReducedModel
        Complex unless every input is real; ``hankel_values`` holds the
        full singular value sequence.

    Raises
    ------
    RankDeficient
        If ``order`` exceeds the numerical rank.

    Examples
    --------
    >>> q = LoewnerQuadruple(WV=np.eye(2), WAV=-np.eye(2), WB=np.ones((2, 1)),
    ...                      CV=np.ones((1, 2)), D=np.zeros((1, 1)))
    >>> eye = np.eye(2)
    >>> bsa_reduce(q, FactorPair(eye, eye, eye, eye), 2).A
    array([[-1.,  0.],
           [ 0., -1.]])
    """
    Zv = factors.right_factor
    Zw = factors.left_factor
    M = Zw.conj().T @ loewner.WV @ Zv
    U, s, V = svd(M)
    r = resolve_order(s, order, rank_guard)

    scale = 1.0 / np.sqrt(s[:r])
    Wr = (Zw @ U[:, :r]) * scale[None, :]
    Vr = (Zv @ V[:, :r]) * scale[None, :]
    A = Wr.conj().T @ loewner.WAV @ Vr
    B = Wr.conj().T @ loewner.WB
    C = loewner.CV @ Vr

    real = all(np.isrealobj(x) for x in (loewner.WV, loewner.WAV, loewner.WB, loewner.CV, Zv, Zw))
    field = Field.REAL if real else Field.COMPLEX
    rom = ReducedModel(
        A=A,
        B=B,
        C=C,
        D=np.real_if_close(loewner.D),
        field=field,
        hankel_values=s,
        metadata={"variant": factors.variant.value, "mode": factors.mode.value},
    )
    logger.info(f"Built ROM of order {r} (sigma_1={s[0]:.4e}, sigma_r={s[r - 1]:.4e})")
    return rom
