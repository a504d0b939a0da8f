"""
Realification
=============

Conjugate-closed point sets give data with a hidden real structure. The
unitary transform ``J`` maps every adjacent conjugate pair through
``(1/sqrt(2)) [[I, -jI], [I, jI]]`` and every real point through ``I``;
``J* X J`` is then real up to roundoff.

Three entry points:

- :func:`realify_quadruple` before the square-root step (the pipeline
  path, so ROMs come out real);
- :func:`realify_factors` for the matching factor pair;
- :func:`realify` for state-paired reduced models such as interpolants.
"""

from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

import numpy as np

from src.core.base_variant import FactorPair
from src.core.exceptions import InvariantViolation, NotConjugateClosed, ResidueTooLarge
from src.reduction.model import Field, ReducedModel
from src.sampling.loewner import LoewnerQuadruple
from src.sampling.samples import conjugate_pairing

# Module logger
logger = logging.getLogger(__name__)

REALIFY_RESIDUE = 1e-8
FACTOR_RESIDUE = 1e-10

Pairing = List[Tuple[int, ...]]


def point_pairing(points: Sequence[complex]) -> Pairing:
    """Conjugate pairing of a point set, or NotConjugateClosed."""
    try:
        return conjugate_pairing(points)
    except InvariantViolation as e:
        raise NotConjugateClosed(
            "Point set is not closed under conjugation", details=e.details
        ) from e


def conjugate_transform(pairing: Pairing, block_size: int) -> np.ndarray:
    """
    Unitary ``J`` for a pairing with ``block_size`` states per point.

    Examples
    --------
    >>> J = conjugate_transform([(0, 1)], 1)
    >>> np.allclose(J.conj().T @ J, np.eye(2))
    True
    """
    count = sum(len(g) for g in pairing)
    b = int(block_size)
    J = np.zeros((count * b, count * b), dtype=complex)
    eye = np.eye(b)
    h = 1.0 / np.sqrt(2.0)
    for group in pairing:
        if len(group) == 1:
            (i,) = group
            J[i * b:(i + 1) * b, i * b:(i + 1) * b] = eye
            continue
        i, j = group
        ri, rj = slice(i * b, (i + 1) * b), slice(j * b, (j + 1) * b)
        J[ri, ri] = h * eye
        J[ri, rj] = -1j * h * eye
        J[rj, ri] = h * eye
        J[rj, rj] = 1j * h * eye
    return J


def real_part_checked(M: np.ndarray, name: str, tol: float = REALIFY_RESIDUE) -> np.ndarray:
    """Real part of ``M`` if its imaginary residue is at most ``tol * ||M||``."""
    M = np.asarray(M)
    if np.isrealobj(M):
        return M
    scale = max(float(np.linalg.norm(M)), np.finfo(float).tiny)
    residue = float(np.linalg.norm(M.imag))
    if residue > tol * scale:
        raise ResidueTooLarge(
            f"{name} is not real after the conjugate-pair transform",
            details={"matrix": name, "residue": residue / scale, "tolerance": tol},
        )
    return M.real.copy()


def realify_quadruple(q: LoewnerQuadruple, tol: float = REALIFY_RESIDUE) -> LoewnerQuadruple:
    """
    Real form ``(J_w* WV J_v, J_w* WAV J_v, J_w* WB, CV J_v, D)``.

    Raises
    ------
    NotConjugateClosed
        If a side is not closed under conjugation.
    ResidueTooLarge
        If the transformed data are not real.
    """
    Jv = conjugate_transform(point_pairing(q.right_points), q.m)
    Jw = conjugate_transform(point_pairing(q.left_points), q.p)
    Jw_h = Jw.conj().T
    out = LoewnerQuadruple(
        WV=real_part_checked(Jw_h @ q.WV @ Jv, "WV", tol),
        WAV=real_part_checked(Jw_h @ q.WAV @ Jv, "WAV", tol),
        WB=real_part_checked(Jw_h @ q.WB, "WB", tol),
        CV=real_part_checked(q.CV @ Jv, "CV", tol),
        D=real_part_checked(q.D, "D", tol),
        right_points=q.right_points,
        left_points=q.left_points,
    )
    logger.debug(f"Realified quadruple {out!r}")
    return out


def _real_factor(Z: np.ndarray, side: str) -> np.ndarray:
    """Real ``F`` with ``F F^T = Re(Z Z*)``; warns if ``Z Z*`` is not real."""
    gram = Z @ Z.conj().T
    scale = np.linalg.norm(gram)
    residue = np.linalg.norm(gram.imag)
    if residue > FACTOR_RESIDUE * max(scale, np.finfo(float).tiny):
        logger.warning(
            f"{side} factor product is not real after pairing "
            f"(|Im| = {residue:.2e}, |ZZ*| = {scale:.2e}); its imaginary part is dropped"
        )
    return np.hstack([Z.real, Z.imag])


def realify_factors(
    pair: FactorPair,
    right_points: Sequence[complex],
    left_points: Sequence[complex],
) -> FactorPair:
    """
    Factor pair matching :func:`realify_quadruple`.

    ``Z = J* T L`` generally stays complex, but ``Z Z*`` is real; the
    real factor ``[Re Z, Im Z]`` has the same product, which is all the
    square-root step depends on. The transformations are folded in, so
    ``T_v`` and ``T_w`` become identities.
    """
    Zv = pair.right_factor
    Zw = pair.left_factor
    m = Zv.shape[0] // max(len(right_points), 1)
    p = Zw.shape[0] // max(len(left_points), 1)
    Jv = conjugate_transform(point_pairing(right_points), m)
    Jw = conjugate_transform(point_pairing(left_points), p)
    Lp = _real_factor(Jv.conj().T @ Zv, "Right")
    Lq = _real_factor(Jw.conj().T @ Zw, "Left")
    return FactorPair(
        Tv=np.eye(Lp.shape[0]),
        Lp=Lp,
        Tw=np.eye(Lq.shape[0]),
        Lq=Lq,
        variant=pair.variant,
        mode=pair.mode,
        metadata=dict(pair.metadata, realified=True),
    )


def realify(model: ReducedModel, pairing: Pairing, tol: float = REALIFY_RESIDUE) -> ReducedModel:
    """
    Real equivalent of a state-paired model.

    The model's states must come in blocks, one block per point of
    ``pairing`` (as for interpolants built on a shift system). An already
    real model is returned unchanged.

    Raises
    ------
    NotConjugateClosed
        If the state dimension does not match the pairing.
    ResidueTooLarge
        If the transformed matrices are not real.
    """
    if model.field == Field.REAL:
        return model
    count = sum(len(g) for g in pairing)
    if count == 0 or model.order % count:
        raise NotConjugateClosed(
            "Model states do not match the conjugate pairing",
            details={"order": model.order, "points": count},
        )
    J = conjugate_transform(pairing, model.order // count)
    Jh = J.conj().T
    out = ReducedModel(
        A=real_part_checked(Jh @ model.A @ J, "A", tol),
        B=real_part_checked(Jh @ model.B, "B", tol),
        C=real_part_checked(model.C @ J, "C", tol),
        D=real_part_checked(model.D, "D", tol),
        field=Field.REAL,
        hankel_values=model.hankel_values,
        metadata=dict(model.metadata),
    )
    return out
