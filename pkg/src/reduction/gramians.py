"""
Variant Gramians
================

Model-based Gramian equations of the seven balancing variants. The
functions accept complex realizations, so the same code serves the
intrusive reference (real ``A, B, C, D``) and the direct route, where
the projected interpolants ``(S_v - zeta L_v, zeta, CV, D)`` and
``(S_w - L_w zeta_w, WB, zeta_w, D)`` are fed in.

With ``(.)^H`` the conjugate transpose:

=======  =====================================  =====================================
variant  controllability-type ``P``             observability-type ``Q``
=======  =====================================  =====================================
bt       Lyapunov, ``B B^H``                    Lyapunov, ``C^H C``
lqg      filter Riccati, weight ``kappa``       control Riccati, weight ``kappa``
hinf     as lqg with ``kappa = 1 - gamma^-2``   as lqg
pr       positive-real Riccati                  positive-real Riccati
br       bounded-real Riccati                   bounded-real Riccati
sw       Lyapunov, ``B B^H``                    Lyapunov of the inverse system
bst      Lyapunov, ``B B^H``                    stochastic Riccati, needs ``P``
=======  =====================================  =====================================
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from src.core.base_variant import FeedthroughTerms, Variant, feedthrough_terms
from src.core.exceptions import GammaOutOfRange
from src.core.linalg import (
    hermitian_part,
    inv_sqrt_pd,
    psd_factor,
    solve_care_stabilizing,
    solve_lyapunov,
    svd,
)
from src.sampling.statespace import StateSpace

# Module logger
logger = logging.getLogger(__name__)


def _h(M: np.ndarray) -> np.ndarray:
    return M.conj().T


def _terms(variant: Variant, D: np.ndarray, terms: Optional[FeedthroughTerms]) -> FeedthroughTerms:
    return terms if terms is not None else feedthrough_terms(variant, D)


def controllability_gramian(
    variant: Union[Variant, str],
    A: np.ndarray,
    B: np.ndarray,
    C: np.ndarray,
    D: np.ndarray,
    kappa: float = 1.0,
    terms: Optional[FeedthroughTerms] = None,
) -> np.ndarray:
    """
    Controllability-type Gramian of a realization.

    Parameters
    ----------
    variant : Variant or str
    A, B, C, D : np.ndarray
        Realization (complex allowed).
    kappa : float, default=1.0
        Weight of the quadratic term of the LQG/HINF equations.
    terms : FeedthroughTerms, optional
        Precomputed feedthrough weights.

    Returns
    -------
    np.ndarray
        Hermitian positive semidefinite ``P``.
    """
    variant = Variant(variant)
    A, B, C, D = (np.atleast_2d(np.asarray(M, dtype=complex)) for M in (A, B, C, D))
    eq = f"{variant.value}_controllability"

    if variant in (Variant.BT, Variant.SW, Variant.BST):
        return solve_lyapunov(A, B @ _h(B), equation=eq)
    if variant in (Variant.LQG, Variant.HINF):
        return solve_care_stabilizing(_h(A), kappa * _h(C) @ C, B @ _h(B), sign=-1, equation=eq)

    t = _terms(variant, D, terms)
    if variant == Variant.PR:
        Rinv = np.linalg.inv(t.R)
        A_pr = A - B @ Rinv @ C
        return solve_care_stabilizing(_h(A_pr), _h(C) @ Rinv @ C, B @ Rinv @ _h(B), sign=1, equation=eq)
    # bounded real
    Rp_inv = np.linalg.inv(t.Rp)
    A_br = A + B @ _h(D) @ Rp_inv @ C
    return solve_care_stabilizing(_h(A_br), _h(C) @ Rp_inv @ C, B @ t.Rb @ _h(B), sign=1, equation=eq)


def observability_gramian(
    variant: Union[Variant, str],
    A: np.ndarray,
    B: np.ndarray,
    C: np.ndarray,
    D: np.ndarray,
    kappa: float = 1.0,
    terms: Optional[FeedthroughTerms] = None,
    P: Optional[np.ndarray] = None,
    pc: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Observability-type Gramian of a realization.

    BST needs the product ``P C^H`` of the controllability-type Gramian
    with ``C^H`` (it enters through ``B_W = P C^H + B D^H``): pass ``P``, or
    ``pc`` directly when the product comes from projected data.

    Raises
    ------
    ValueError
        If BST is requested without ``P`` or ``pc``.
    """
    variant = Variant(variant)
    A, B, C, D = (np.atleast_2d(np.asarray(M, dtype=complex)) for M in (A, B, C, D))
    eq = f"{variant.value}_observability"

    if variant == Variant.BT:
        return solve_lyapunov(_h(A), _h(C) @ C, equation=eq)
    if variant in (Variant.LQG, Variant.HINF):
        return solve_care_stabilizing(A, kappa * B @ _h(B), _h(C) @ C, sign=-1, equation=eq)

    t = _terms(variant, D, terms)
    if variant == Variant.PR:
        Rinv = np.linalg.inv(t.R)
        A_pr = A - B @ Rinv @ C
        return solve_care_stabilizing(A_pr, B @ Rinv @ _h(B), _h(C) @ Rinv @ C, sign=1, equation=eq)
    if variant == Variant.BR:
        Rp_inv = np.linalg.inv(t.Rp)
        A_br = A + B @ _h(D) @ Rp_inv @ C
        Rq_inv = np.linalg.inv(t.Rq)
        return solve_care_stabilizing(A_br, B @ Rq_inv @ _h(B), _h(C) @ t.Rc @ C, sign=1, equation=eq)
    if variant == Variant.SW:
        Rs_inv = np.linalg.inv(t.Rs)
        A_z = A - B @ np.linalg.solve(D, C)
        return solve_lyapunov(_h(A_z), hermitian_part(_h(C) @ Rs_inv @ C), equation=eq)

    # balanced stochastic
    if pc is None:
        if P is None:
            raise ValueError("BST observability Gramian needs P or P C^H")
        pc = P @ _h(C)
    Rs_isqrt = inv_sqrt_pd(t.Rs, "D D^H")
    B_s = (pc + B @ _h(D)) @ Rs_isqrt
    C_s = Rs_isqrt @ C
    A_s = A - B_s @ C_s
    return solve_care_stabilizing(A_s, B_s @ _h(B_s), _h(C_s) @ C_s, sign=1, equation=eq)


@dataclass
class GramianPair:
    """
    Gramians of a model and their square-root factors.

    Attributes
    ----------
    P, Q : np.ndarray
        Controllability- and observability-type Gramians.
    variant : Variant
    """

    P: np.ndarray
    Q: np.ndarray
    variant: Variant = Variant.BT

    @property
    def factors(self) -> Tuple[np.ndarray, np.ndarray]:
        """``(L_p, L_q)`` with ``L_p L_p^H = P`` and ``L_q L_q^H = Q``."""
        return psd_factor(self.P), psd_factor(self.Q)

    def hankel_values(self) -> np.ndarray:
        """Singular values of ``L_q^H L_p`` (square roots of ``eig(P Q)``)."""
        Lp, Lq = self.factors
        return svd(_h(Lq) @ Lp)[1]


def intrusive_gramians(
    ss: StateSpace,
    variant: Union[Variant, str],
    gamma: Optional[float] = None,
) -> GramianPair:
    """
    Gramians of a real state-space model for a variant.

    The returned matrices are real.

    Raises
    ------
    GammaOutOfRange
        HINF without ``gamma > 1``.
    FeedthroughNotPR, FeedthroughNotBR, FeedthroughSingular, NotSquare
        When the model violates the variant's feedthrough assumption.
    """
    variant = Variant(variant)
    kappa = 1.0
    if variant == Variant.HINF:
        if gamma is None or not gamma > 1.0:
            raise GammaOutOfRange(
                "H-infinity level must exceed one", variant=variant.value, details={"gamma": gamma}
            )
        kappa = 1.0 - 1.0 / gamma**2
    terms = feedthrough_terms(variant, ss.D)
    P = controllability_gramian(variant, ss.A, ss.B, ss.C, ss.D, kappa, terms)
    Q = observability_gramian(variant, ss.A, ss.B, ss.C, ss.D, kappa, terms, P=P)
    logger.debug(f"Intrusive {variant.value} Gramians for n={ss.n}")
    return GramianPair(P=np.real(P), Q=np.real(Q), variant=variant)
