"""
Coupled Variants
================

Shared machinery of the variants whose projected equations need a
transformation ``T`` (PR, BR, SW, BST). On each side the transformation
solves a Sylvester equation with three coefficients:

right side, gain ``K``, input scale ``N`` and output scale ``O``::

    (S_v - zeta L_v - zeta K CV) T_v - T_v S_v + zeta N L_v = 0
    C_hat = O CV T_v

left side, with coupling data ``X`` (``WB`` except for BST)::

    (S_w - L_w zeta_w - X K zeta_w)* T_w - T_w S_w* + zeta_w* N L_w^T = 0
    B_hat = T_w* X O

``C_hat`` and ``B_hat`` correct the PORK Lyapunov equations (ADI) or
enter the projected Riccati equations (imaginary axis). Without an output
scale the Gramian is the plain BT one (SW).

The diagonal blocks of ``T`` are exact for any free parameter:
``T_ii = (I + K H_i)^{-1} N`` on the right side and
``(I + K* X_i*)^{-1} N`` on the left side, which gives the fast path.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.core.base_variant import block_diag
from src.core.exceptions import SingularPw, SingularQv, SingularTv, SingularTw
from src.core.linalg import (
    hermitian_part,
    psd_factor,
    solve_care_stabilizing,
    solve_lyapunov,
    solve_sylvester,
)
from src.interpolation.pork import QV_HINT
from src.variants.bt import BTVariant, Factors

# Module logger
logger = logging.getLogger(__name__)


def _h(M: np.ndarray) -> np.ndarray:
    return M.conj().T


@dataclass
class SideCoupling:
    """
    Coefficients of one side's transformation.

    Attributes
    ----------
    gain : np.ndarray
        ``K``.
    input_scale : np.ndarray
        ``N``.
    output_scale : np.ndarray or None
        ``O``; None means the Gramian equation is not corrected.
    """

    gain: np.ndarray
    input_scale: np.ndarray
    output_scale: Optional[np.ndarray] = None


class CoupledVariant(BTVariant):
    """
    Base class of the transformed variants.

    Subclasses return their couplings from :meth:`right_coupling` and
    :meth:`left_coupling`; a side without coupling falls back to BT.
    """

    fast_path_loses_guarantee = True

    def right_coupling(self) -> Optional[SideCoupling]:
        return None

    def left_coupling(self) -> Optional[SideCoupling]:
        return None

    def left_coupling_data(self) -> np.ndarray:
        """``X`` of the left transformation."""
        return self.loewner.WB

    def left_coupling_blocks(self) -> List[np.ndarray]:
        """Diagonal blocks ``X_i`` used by the fast path."""
        return self.left_values()

    # ------------------------------------------------------------ right side

    def right_transform(self, c: SideCoupling) -> np.ndarray:
        sv = self.right_shift
        fp = self.right_zeta
        A = fp.state_matrix(sv) - fp.zeta @ c.gain @ self.loewner.CV
        Tv = solve_sylvester(
            A, -sv.S, fp.zeta @ c.input_scale @ sv.L, equation=f"{self.name.value}_right_transform"
        )
        self.check_transform(Tv, SingularTv, "T_v")
        return Tv

    def _right_blocks(self, c: SideCoupling) -> List[Tuple[np.ndarray, np.ndarray]]:
        """``(T_ii, C_hat_i* C_hat_i)`` per right point."""
        out = []
        for H in self.right_values():
            t = np.linalg.solve(np.eye(H.shape[1]) + c.gain @ H, c.input_scale)
            Ch = c.output_scale @ H @ t
            out.append((t, _h(Ch) @ Ch))
        return out

    def adi_right(self, fast: bool) -> Factors:
        c = self.right_coupling()
        if c is None:
            return super().adi_right(fast)
        sv = self.right_shift
        if fast:
            t_blocks, g_blocks = [], []
            for s, (t, X) in zip(sv.points, self._right_blocks(c)):
                t_blocks.append(t)
                g_blocks.append(hermitian_part(2.0 * s.real * np.linalg.inv(np.eye(X.shape[0]) - X)))
            Tv = block_diag(t_blocks)
            self.check_transform(Tv, SingularTv, "T_v")
            self.right_gramian = block_diag(g_blocks)
            return Tv, block_diag([psd_factor(g) for g in g_blocks])
        Tv = self.right_transform(c)
        Ch = c.output_scale @ self.loewner.CV @ Tv
        Qv = sv.lyapunov(sv.L.T @ sv.L - _h(Ch) @ Ch)
        self.right_gramian, Lp = self.inverse_factor(Qv, SingularQv, "Q_v", QV_HINT)
        return Tv, Lp

    def ddp_right(self, fast: bool) -> Factors:
        c = self.right_coupling()
        if c is None:
            return super().ddp_right(fast)
        if fast:
            blocks = self._right_blocks(c)
            Tv = block_diag([t for t, _ in blocks])
            self.check_transform(Tv, SingularTv, "T_v")
            g_blocks = [self.closed_form_gramian(X, self.eps, -1) for _, X in blocks]
            self.right_gramian = block_diag(g_blocks)
            return Tv, block_diag([psd_factor(g) for g in g_blocks])
        sv = self.right_shift
        fp = self.right_zeta
        Tv = self.right_transform(c)
        Ch = c.output_scale @ self.loewner.CV @ Tv
        P = solve_care_stabilizing(
            _h(fp.state_matrix(sv)),
            _h(Ch) @ Ch,
            fp.zeta @ _h(fp.zeta),
            sign=1,
            equation=f"{self.name.value}_projected_controllability",
        )
        self.right_gramian = P
        return Tv, psd_factor(P)

    # ------------------------------------------------------------- left side

    def left_transform(self, c: SideCoupling, X: np.ndarray) -> np.ndarray:
        sw = self.left_shift
        fp = self.left_zeta
        A = _h(fp.state_matrix(sw) - X @ c.gain @ fp.zeta)
        Tw = solve_sylvester(
            A,
            -_h(sw.S),
            _h(fp.zeta) @ c.input_scale @ sw.L.T,
            equation=f"{self.name.value}_left_transform",
        )
        self.check_transform(Tw, SingularTw, "T_w")
        return Tw

    def _left_blocks(self, c: SideCoupling) -> List[Tuple[np.ndarray, Optional[np.ndarray]]]:
        """``(T_ii, B_hat_i B_hat_i*)`` per left point; the second is None without output scale."""
        out = []
        for Xi in self.left_coupling_blocks():
            b = Xi.shape[0]
            t = np.linalg.solve(np.eye(b) + _h(c.gain) @ _h(Xi), c.input_scale)
            if c.output_scale is None:
                out.append((t, None))
                continue
            Bh = _h(t) @ Xi @ c.output_scale
            out.append((t, Bh @ _h(Bh)))
        return out

    def _left_corrections(self, c: SideCoupling) -> Tuple[np.ndarray, Optional[np.ndarray]]:
        X = self.left_coupling_data()
        Tw = self.left_transform(c, X)
        if c.output_scale is None:
            return Tw, None
        Bh = _h(Tw) @ X @ c.output_scale
        return Tw, Bh @ _h(Bh)

    def adi_left(self, fast: bool) -> Factors:
        c = self.left_coupling()
        if c is None:
            return super().adi_left(fast)
        sw = self.left_shift
        if fast:
            t_blocks, l_blocks = [], []
            for s, (t, Y) in zip(sw.points, self._left_blocks(c)):
                t_blocks.append(t)
                eye = np.eye(t.shape[0])
                inv = eye if Y is None else np.linalg.inv(eye - Y)
                l_blocks.append(psd_factor(hermitian_part(2.0 * s.real * inv)))
            Tw = block_diag(t_blocks)
            self.check_transform(Tw, SingularTw, "T_w")
            return Tw, block_diag(l_blocks)
        Tw, BBh = self._left_corrections(c)
        M = sw.L @ sw.L.T
        if BBh is not None:
            M = M - BBh
        _, Lq = self.inverse_factor(sw.lyapunov(M), SingularPw, "P_w", QV_HINT)
        return Tw, Lq

    def ddp_left(self, fast: bool) -> Factors:
        c = self.left_coupling()
        if c is None:
            return super().ddp_left(fast)
        if fast:
            blocks = self._left_blocks(c)
            Tw = block_diag([t for t, _ in blocks])
            self.check_transform(Tw, SingularTw, "T_w")
            q_blocks = [
                0.5 * self.eps * np.eye(t.shape[0]) if Y is None else self.closed_form_gramian(Y, self.eps, -1)
                for t, Y in blocks
            ]
            return Tw, block_diag([psd_factor(q) for q in q_blocks])
        sw = self.left_shift
        fp = self.left_zeta
        Tw, BBh = self._left_corrections(c)
        A = fp.state_matrix(sw)
        eq = f"{self.name.value}_projected_observability"
        if BBh is None:
            Q = solve_lyapunov(_h(A), _h(fp.zeta) @ fp.zeta, equation=eq)
        else:
            Q = solve_care_stabilizing(A, BBh, _h(fp.zeta) @ fp.zeta, sign=1, equation=eq)
        return Tw, psd_factor(Q)
