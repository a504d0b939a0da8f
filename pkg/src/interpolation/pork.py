"""
Free Parameters and PORK Interpolants
=====================================

Every interpolant of the right samples has the form
``G_r(s) = CV (sI - S_v + zeta L_v)^{-1} zeta + D`` and every interpolant
of the left samples ``zeta_w (sI - S_w + L_w zeta_w)^{-1} WB + D``. This
module computes the free parameter ``zeta`` in four ways:

- I-PORK / O-PORK: pseudo-optimal choice from the Lyapunov solutions
  ``Q_v`` / ``P_w`` (right-half-plane points only); the interpolant's
  poles are the mirror images ``-conj(sigma_i)``.
- Pole placement: any prescribed disjoint pole set.
- Modal: ``zeta = c 1 (x) I``, a rank-one perturbation of ``S``.
- Supplied: a caller-provided matrix, validated for shape, optionally
  read from a JSON free-parameter file.

Classes
-------
ZetaMode
    How a free parameter was obtained.
FreeParameter
    ``zeta`` with its side and mode.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from src.core.exceptions import (
    ConfigError,
    DimensionMismatch,
    ParseError,
    PointNotInRHP,
    SingularPw,
    SingularQv,
    SingularXp,
)
from src.core.fileio import (
    PathLike,
    atomic_write_text,
    decode_complex_matrix,
    dump_json,
    encode_complex_matrix,
    load_json,
)
from src.core.linalg import COND_GUARD, guarded_solve
from src.interpolation.shift import RIGHT, ShiftSystem
from src.reduction.model import ReducedModel

# Module logger
logger = logging.getLogger(__name__)

QV_HINT = "use shifts with larger real parts or fewer, better separated points"
XP_HINT = "shrink epsilon (choose_epsilon context 'xp_dom') or re-space the frequencies"


class ZetaMode(str, Enum):
    """Origin of a free parameter."""

    IPORK = "ipork"
    OPORK = "opork"
    POLE_PLACED = "pole_placed"
    MODAL = "modal"
    SUPPLIED = "supplied"


@dataclass
class FreeParameter:
    """
    Free parameter of an interpolant.

    Attributes
    ----------
    zeta : np.ndarray
        ``(v*m, m)`` on the right side, ``(p, w*p)`` on the left side.
    mode : ZetaMode
    side : str
    """

    zeta: np.ndarray
    mode: ZetaMode
    side: str = RIGHT

    def state_matrix(self, shift: ShiftSystem) -> np.ndarray:
        """``S_v - zeta L_v`` (right) or ``S_w - L_w zeta_w`` (left)."""
        if self.side == RIGHT:
            return shift.S - self.zeta @ shift.L
        return shift.S - shift.L @ self.zeta


def _require_rhp(shift: ShiftSystem) -> None:
    if shift.count and float(np.min(shift.points.real)) <= 0.0:
        raise PointNotInRHP(
            "PORK needs every point in the open right half-plane",
            hint="sample at eps + j omega with eps > 0",
            details={"side": shift.side, "min_real_part": float(np.min(shift.points.real))},
        )


def pork_gramian(shift: ShiftSystem) -> np.ndarray:
    """``Q_v`` (right) or ``P_w`` (left) for the plain PORK Lyapunov equation."""
    ones = shift.L
    M = ones.T @ ones if shift.side == RIGHT else ones @ ones.T
    return shift.lyapunov(M)


def pork_zeta(shift: ShiftSystem, cond_guard: float = COND_GUARD) -> FreeParameter:
    """
    Pseudo-optimal free parameter.

    Right: ``zeta = Q_v^{-1} L_v^T``; left: ``zeta_w = L_w^T P_w^{-1}``.

    Raises
    ------
    PointNotInRHP
        If a point has nonpositive real part.
    SingularQv, SingularPw
        If the Cauchy-type Gramian is numerically singular.
    """
    _require_rhp(shift)
    G = pork_gramian(shift)
    if shift.side == RIGHT:
        zeta = guarded_solve(G, shift.L.T, SingularQv, "Q_v", QV_HINT, cond_guard)
        return FreeParameter(zeta, ZetaMode.IPORK, shift.side)
    zeta_t = guarded_solve(G.T, shift.L, SingularPw, "P_w", QV_HINT, cond_guard)
    return FreeParameter(zeta_t.T, ZetaMode.OPORK, shift.side)


def i_pork(shift: ShiftSystem, CV: np.ndarray, D: np.ndarray) -> ReducedModel:
    """
    Input PORK interpolant of the right samples.

    Returns ``(S_v - zeta L_v, zeta, CV, D)`` with ``zeta = Q_v^{-1} L_v^T``;
    its poles are ``-conj(sigma_i)``.

    Examples
    --------
    >>> sv = build_shift_system([1.0], 1)
    >>> rom = i_pork(sv, np.array([[0.5]]), np.zeros((1, 1)))
    >>> rom.A
    array([[-1.+0.j]])
    """
    fp = pork_zeta(shift)
    rom = ReducedModel(A=fp.state_matrix(shift), B=fp.zeta, C=CV, D=D)
    rom.metadata["zeta_mode"] = fp.mode.value
    return rom


def o_pork(shift: ShiftSystem, WB: np.ndarray, D: np.ndarray) -> ReducedModel:
    """Output PORK interpolant ``(S_w - L_w zeta_w, WB, zeta_w, D)`` of the left samples."""
    fp = pork_zeta(shift)
    rom = ReducedModel(A=fp.state_matrix(shift), B=WB, C=fp.zeta, D=D)
    rom.metadata["zeta_mode"] = fp.mode.value
    return rom


def default_poles(shift: ShiftSystem, eps: float) -> np.ndarray:
    """Desired poles ``-eps + j Im(s_i)`` for imaginary-axis points."""
    return -float(eps) + 1j * shift.points.imag


def pole_place_zeta(
    shift: ShiftSystem,
    poles: Sequence[complex],
    cond_guard: float = COND_GUARD,
) -> FreeParameter:
    """
    Free parameter placing the interpolant's poles at ``poles``.

    Solves ``-S_p* X_p - X_p S + L^T L = 0`` with
    ``S_p = diag(-conj(lambda)) (x) I`` and returns ``zeta = X_p^{-1} L^T``
    (right side). The left side places the poles of the transposed pair
    and returns the transpose.

    Raises
    ------
    SpectrumOverlap
        If a desired pole equals an interpolation point.
    SingularXp
        If ``X_p`` is numerically singular.
    """
    lam = np.asarray(poles, dtype=complex).ravel()
    if lam.size != shift.count:
        raise DimensionMismatch(
            "Need one desired pole per interpolation point",
            equation="pole_placement",
            details={"poles": int(lam.size), "points": shift.count},
        )
    ell = shift.L if shift.side == RIGHT else shift.L.T
    Xp = shift.sylvester_with(lam, ell.T @ ell)
    zeta = guarded_solve(Xp, ell.T, SingularXp, "X_p", XP_HINT, cond_guard)
    if shift.side != RIGHT:
        zeta = zeta.T
    logger.debug(f"Placed {lam.size} poles on the {shift.side} side")
    return FreeParameter(zeta, ZetaMode.POLE_PLACED, shift.side)


def modal_zeta(shift: ShiftSystem, scale: float) -> FreeParameter:
    """``zeta = scale * (1 (x) I)``; ``2 eps`` for ADI points, ``eps`` on the axis."""
    return FreeParameter(float(scale) * shift.ones().astype(complex), ZetaMode.MODAL, shift.side)


def supplied_zeta(shift: ShiftSystem, zeta: np.ndarray) -> FreeParameter:
    """Validate a caller-provided free parameter."""
    arr = np.atleast_2d(np.asarray(zeta, dtype=complex))
    expected = (shift.dim, shift.block_size) if shift.side == RIGHT else (shift.block_size, shift.dim)
    if arr.shape != expected:
        raise DimensionMismatch(
            "Supplied free parameter has the wrong shape",
            equation=f"{shift.side}_zeta",
            details={"expected": list(expected), "found": list(arr.shape)},
        )
    return FreeParameter(arr, ZetaMode.SUPPLIED, shift.side)


def resolve_zeta(
    shift: ShiftSystem,
    adi: bool,
    eps: Optional[float] = None,
    supplied: Optional[np.ndarray] = None,
    rule: str = "pole",
    cond_guard: float = COND_GUARD,
) -> FreeParameter:
    """
    Free parameter for one side of a run.

    Supplied values win; ADI points use PORK; imaginary-axis points use
    pole placement at ``-eps + j omega`` (``rule="pole"``) or the modal
    parameter ``eps (1 (x) I)`` (``rule="modal"``).
    """
    if supplied is not None:
        return supplied_zeta(shift, supplied)
    if adi:
        return pork_zeta(shift, cond_guard)
    if eps is None:
        raise ConfigError(
            "Imaginary-axis points need an epsilon",
            details={"side": shift.side, "hint": "pass --eps or --eps-auto"},
        )
    if rule == "modal":
        return modal_zeta(shift, eps)
    return pole_place_zeta(shift, default_poles(shift, eps), cond_guard)


# =============================================================================
# Free-Parameter Files
# =============================================================================


def _decode_zeta(value: Any, name: str, path: str) -> np.ndarray:
    if not isinstance(value, list) or not value or not isinstance(value[0], list):
        raise ParseError("Expected a non-empty complex matrix", path=path, field=name)
    return decode_complex_matrix(value, name, (len(value), len(value[0])), path)


def read_zeta_file(path: PathLike) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """
    Read ``{"zeta_right": ..., "zeta_left": ...}`` with ``[re, im]`` entries.

    ``zeta_left`` is optional. Shapes are checked against the shift
    systems when the parameters are used.

    Raises
    ------
    ParseError
        If the file or a matrix is malformed.
    """
    where = str(path)
    data = load_json(path)
    if not isinstance(data, dict) or "zeta_right" not in data:
        raise ParseError("Free-parameter file needs 'zeta_right'", path=where, field="zeta_right")
    right = _decode_zeta(data["zeta_right"], "zeta_right", where)
    left = None
    if data.get("zeta_left") is not None:
        left = _decode_zeta(data["zeta_left"], "zeta_left", where)
    logger.debug(f"Read free parameters {right.shape} / {None if left is None else left.shape} from {where}")
    return right, left


def write_zeta_file(path: PathLike, zeta_right: np.ndarray, zeta_left: Optional[np.ndarray] = None) -> None:
    data: Dict[str, Any] = {"zeta_right": encode_complex_matrix(zeta_right)}
    if zeta_left is not None:
        data["zeta_left"] = encode_complex_matrix(zeta_left)
    atomic_write_text(path, dump_json(data))
