"""
Shift Systems
=============

Kronecker-structured pairs built from interpolation points:

- right side: ``S_v = diag(sigma) (x) I_m`` and ``L_v = [1, ..., 1] (x) I_m``
- left side:  ``S_w = diag(mu) (x) I_p`` and ``L_w = [1, ..., 1]^T (x) I_p``

Since ``S`` is diagonal, the Lyapunov equations of the interpolation
framework have Cauchy-type closed-form solutions, exposed through
:meth:`ShiftSystem.lyapunov`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.core.exceptions import DuplicatePoints, SpectrumOverlap
from src.core.linalg import SEPARATION_RTOL, as_complex_matrix

# Module logger
logger = logging.getLogger(__name__)

RIGHT = "right"
LEFT = "left"


@dataclass
class ShiftSystem:
    """
    Shift pair of one side.

    Attributes
    ----------
    points : np.ndarray
        Interpolation points.
    block_size : int
        ``m`` on the right side, ``p`` on the left side.
    side : str
        ``"right"`` or ``"left"``.
    """

    points: np.ndarray
    block_size: int
    side: str = RIGHT

    @property
    def count(self) -> int:
        return int(self.points.size)

    @property
    def dim(self) -> int:
        return self.count * self.block_size

    @property
    def diagonal(self) -> np.ndarray:
        """Diagonal of ``S`` (each point repeated ``block_size`` times)."""
        return np.repeat(self.points, self.block_size)

    @property
    def S(self) -> np.ndarray:
        return np.diag(self.diagonal)

    @property
    def L(self) -> np.ndarray:
        """``L_v`` (block row) on the right side, ``L_w`` (block column) on the left."""
        row = np.kron(np.ones((1, self.count)), np.eye(self.block_size))
        return row if self.side == RIGHT else row.T.copy()

    def ones(self) -> np.ndarray:
        """``1 (x) I`` shaped like a right free parameter (dim x b) or a left one (b x dim)."""
        col = np.kron(np.ones((self.count, 1)), np.eye(self.block_size))
        return col if self.side == RIGHT else col.T.copy()

    def lyapunov(self, M: np.ndarray) -> np.ndarray:
        """
        Solve the side's shifted Lyapunov equation in closed form.

        Right side: ``-S* X - X S + M = 0``, i.e.
        ``X[a, b] = M[a, b] / (conj(s_a) + s_b)``.
        Left side: ``-S X - X S* + M = 0``, i.e.
        ``X[a, b] = M[a, b] / (s_a + conj(s_b))``.

        Raises
        ------
        SpectrumOverlap
            If a denominator vanishes (a point on the imaginary axis
            meeting the mirror of another).
        """
        M = as_complex_matrix(M, "M")
        d = self.diagonal
        if self.side == RIGHT:
            denom = d.conj()[:, None] + d[None, :]
        else:
            denom = d[:, None] + d.conj()[None, :]
        _require_nonzero(denom, f"{self.side}_shift_lyapunov")
        return M / denom

    def sylvester_with(self, poles: Sequence[complex], M: np.ndarray) -> np.ndarray:
        """
        Solve ``diag(poles) X - X S + M = 0`` blockwise, i.e.
        ``X[a, b] = M[a, b] / (s_b - lambda_a)``.
        """
        lam = np.repeat(np.asarray(poles, dtype=complex), self.block_size)
        denom = self.diagonal[None, :] - lam[:, None]
        _require_nonzero(denom, f"{self.side}_pole_placement")
        return as_complex_matrix(M, "M") / denom

    def __repr__(self) -> str:
        return f"ShiftSystem(side={self.side}, count={self.count}, block_size={self.block_size})"


def _require_nonzero(denom: np.ndarray, equation: str) -> None:
    if denom.size == 0:
        return
    scale = max(float(np.max(np.abs(denom))), 1.0)
    gap = float(np.min(np.abs(denom)))
    if gap <= SEPARATION_RTOL * scale:
        raise SpectrumOverlap(
            "Shift spectra are not separated",
            equation=equation,
            details={"gap": gap},
        )


def build_shift_system(
    points: Sequence[complex],
    block_size: int,
    side: str = RIGHT,
) -> ShiftSystem:
    """
    Build the shift pair of one side.

    Raises
    ------
    DuplicatePoints
        If two points coincide.

    Examples
    --------
    >>> sv = build_shift_system([1j, -1j], 1)
    >>> sv.S
    array([[0.+1.j, 0.+0.j],
           [0.+0.j, 0.-1.j]])
    >>> sv.L
    array([[1., 1.]])
    """
    if side not in (RIGHT, LEFT):
        raise ValueError(f"side must be '{RIGHT}' or '{LEFT}', got {side!r}")
    pts = np.asarray(points, dtype=complex).ravel()
    if pts.size > 1:
        scale = max(float(np.max(np.abs(pts))), 1.0)
        diff = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(diff, np.inf)
        if float(diff.min()) <= SEPARATION_RTOL * scale:
            i, j = np.unravel_index(np.argmin(diff), diff.shape)
            raise DuplicatePoints(
                "Shift system needs distinct points",
                details={"side": side, "indices": [int(i), int(j)]},
            )
    return ShiftSystem(points=pts, block_size=int(block_size), side=side)
