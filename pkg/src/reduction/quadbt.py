"""
Quadrature-Based Balanced Truncation
====================================

Comparator pipeline: the BT Gramians are replaced by trapezoidal
quadratures of their frequency-domain integrals, so the factors are
diagonal weight matrices over imaginary-axis samples::

    L_p = diag(w_p) (x) I_m,   L_q = diag(w_q) (x) I_p,   T_v = T_w = I

Weights are stored unsquared; ``w_i^2`` is the quadrature weight.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from src.core.base_variant import FactorPair, Mode, Variant
from src.core.exceptions import ReductionError, TooFewNodes, WeightCountMismatch
from src.reduction.bsa import RANK_GUARD, bsa_reduce
from src.reduction.model import ReducedModel
from src.reduction.realify import point_pairing, realify_factors, realify_quadruple
from src.sampling.loewner import LoewnerQuadruple

# Module logger
logger = logging.getLogger(__name__)


class QuadratureRule(str, Enum):
    LINEAR = "linear"
    EXPONENTIAL = "exponential"


def _half_spacings(x: np.ndarray) -> np.ndarray:
    """Trapezoid stencil: half the distance to each neighbour, summed."""
    d = np.diff(x)
    h = np.zeros_like(x)
    h[:-1] += 0.5 * d
    h[1:] += 0.5 * d
    return h


def trapezoid_weights(
    freqs: Sequence[float],
    rule: Union[QuadratureRule, str] = QuadratureRule.EXPONENTIAL,
) -> np.ndarray:
    """
    Unsquared trapezoidal weights for ordered frequencies.

    ``LINEAR``: ``w_i^2 = h_i / (2 pi)`` with ``h_i`` the half-sum of the
    neighbouring spacings. ``EXPONENTIAL``: spacings are taken in
    ``log(omega)`` and multiplied by ``omega_i`` (the change of variables).

    Raises
    ------
    TooFewNodes
        Fewer than two distinct increasing frequencies, or a nonpositive
        frequency for the exponential rule.

    Examples
    --------
    >>> trapezoid_weights([1.0, 3.0], "linear") ** 2 * 2 * np.pi
    array([1., 1.])
    """
    rule = QuadratureRule(rule)
    x = np.asarray(freqs, dtype=float).ravel()
    if x.size < 2 or np.any(np.diff(x) <= 0.0):
        raise TooFewNodes(
            "Trapezoidal rule needs at least two increasing frequencies",
            details={"nodes": int(x.size)},
        )
    if rule == QuadratureRule.LINEAR:
        w2 = _half_spacings(x) / (2.0 * np.pi)
    else:
        if x[0] <= 0.0:
            raise TooFewNodes("Exponential rule needs positive frequencies", details={"first": float(x[0])})
        w2 = x * _half_spacings(np.log(x)) / (2.0 * np.pi)
    return np.sqrt(w2)


def quadbt_weights(
    points: Sequence[complex],
    rule: Union[QuadratureRule, str] = QuadratureRule.EXPONENTIAL,
) -> np.ndarray:
    """
    Per-point weights for a conjugate-closed imaginary-axis point set;
    conjugate partners share the weight of their frequency.
    """
    pts = np.asarray(points, dtype=complex).ravel()
    groups = point_pairing(pts)
    freqs = np.array([abs(pts[g[0]].imag) for g in groups])
    order = np.argsort(freqs)
    w_sorted = trapezoid_weights(freqs[order], rule)
    weights = np.empty(pts.size)
    for rank, k in enumerate(order):
        for idx in groups[k]:
            weights[idx] = w_sorted[rank]
    return weights


def quadbt_factors(loewner: LoewnerQuadruple, w_p: Sequence[float], w_q: Sequence[float]) -> FactorPair:
    """
    Diagonal factor pair from weights.

    Raises
    ------
    WeightCountMismatch
        If the weight counts differ from the point counts or are empty.
    ReductionError
        If a weight is not strictly positive.
    """
    w_p = np.asarray(w_p, dtype=float).ravel()
    w_q = np.asarray(w_q, dtype=float).ravel()
    if w_p.size == 0 or w_p.size != loewner.v or w_q.size != loewner.w:
        raise WeightCountMismatch(
            "Need one weight per interpolation point",
            details={"w_p": int(w_p.size), "v": loewner.v, "w_q": int(w_q.size), "w": loewner.w},
        )
    if np.any(w_p <= 0.0) or np.any(w_q <= 0.0):
        raise ReductionError("Quadrature weights must be strictly positive")
    Lp = np.kron(np.diag(w_p), np.eye(loewner.m)).astype(complex)
    Lq = np.kron(np.diag(w_q), np.eye(loewner.p)).astype(complex)
    return FactorPair(
        Tv=np.eye(Lp.shape[0], dtype=complex),
        Lp=Lp,
        Tw=np.eye(Lq.shape[0], dtype=complex),
        Lq=Lq,
        variant=Variant.BT,
        mode=Mode.DDP,
        metadata={"route": "quadrature"},
    )


def quadbt_reduce(
    loewner: LoewnerQuadruple,
    weights: Tuple[Sequence[float], Sequence[float]],
    order: Optional[Union[int, float]] = None,
    rank_guard: float = RANK_GUARD,
    realify_data: bool = True,
) -> ReducedModel:
    """
    QuadBT reduced model.

    With ``realify_data`` (and conjugate-closed points) the data and
    factors are realified first, giving a real model.
    """
    pair = quadbt_factors(loewner, *weights)
    q = loewner
    if realify_data:
        q = realify_quadruple(loewner)
        pair = realify_factors(pair, loewner.right_points, loewner.left_points)
    rom = bsa_reduce(q, pair, order, rank_guard)
    rom.metadata.update({"pipeline": "quadbt", "variant": Variant.BT.value})
    return rom
