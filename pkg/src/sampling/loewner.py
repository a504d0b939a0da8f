"""
Loewner Assembly
================

Builds the projected quadruple ``(W*V, W*AV, W*B, CV)`` from transfer
function samples alone. Left points index block rows, right points index
block columns:

- ``WV[i, j]  = -(H(sigma_j) - H(mu_i)) / (sigma_j - mu_i)``
- ``WAV[i, j] = -(sigma_j H(sigma_j) - mu_i H(mu_i)) / (sigma_j - mu_i)``
- ``WB[i]     = H(mu_i)``
- ``CV[j]     = H(sigma_j)``

Coincident points use the derivative limits ``-H'(s)`` and
``-(H(s) + s H'(s))``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from src.core.exceptions import MissingDerivative
from src.sampling.samples import HERMITE_RTOL, SampleSet
from src.sampling.statespace import StateSpace

# Module logger
logger = logging.getLogger(__name__)


@dataclass
class LoewnerQuadruple:
    """
    Projected matrices assembled from samples.

    Attributes
    ----------
    WV : np.ndarray, shape (w*p, v*m)
        Loewner matrix.
    WAV : np.ndarray, shape (w*p, v*m)
        Shifted Loewner matrix.
    WB : np.ndarray, shape (w*p, m)
        Stacked left samples.
    CV : np.ndarray, shape (p, v*m)
        Concatenated right samples.
    D : np.ndarray, shape (p, m)
        Feedthrough.
    right_points, left_points : np.ndarray
        Interpolation points; empty for quadruples built from a realization.
    """

    WV: np.ndarray
    WAV: np.ndarray
    WB: np.ndarray
    CV: np.ndarray
    D: np.ndarray
    right_points: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    left_points: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))

    @property
    def m(self) -> int:
        return int(self.WB.shape[1])

    @property
    def p(self) -> int:
        return int(self.CV.shape[0])

    @property
    def v(self) -> int:
        return int(self.right_points.size)

    @property
    def w(self) -> int:
        return int(self.left_points.size)

    def block(self, name: str, i: int, j: int) -> np.ndarray:
        """Block ``(i, j)`` of ``WV`` or ``WAV``."""
        M = getattr(self, name)
        p, m = self.p, self.m
        return M[i * p:(i + 1) * p, j * m:(j + 1) * m]

    @classmethod
    def from_statespace(cls, ss: StateSpace) -> "LoewnerQuadruple":
        """Quadruple ``(I, A, B, C)`` of a realization, used by the intrusive path."""
        return cls(
            WV=np.eye(ss.n),
            WAV=ss.A.copy(),
            WB=ss.B.copy(),
            CV=ss.C.copy(),
            D=ss.D.copy(),
        )

    def __repr__(self) -> str:
        return (
            f"LoewnerQuadruple(v={self.v}, w={self.w}, m={self.m}, p={self.p}, "
            f"shape={self.WV.shape})"
        )


def _stack(side: list, attr: str) -> np.ndarray:
    return np.stack([getattr(pt, attr) for pt in side]) if side else np.zeros((0, 0, 0), dtype=complex)


def assemble(samples: SampleSet, hermite_rtol: float = HERMITE_RTOL) -> LoewnerQuadruple:
    """
    Assemble the Loewner quadruple.

    Parameters
    ----------
    samples : SampleSet
        Validated samples; coincident right/left points need ``dH``.
    hermite_rtol : float, default=1e-8
        Points with ``|sigma - mu| <= hermite_rtol * max(1, |sigma|)``
        use the derivative branch.

    Raises
    ------
    MissingDerivative
        If a coincident pair has no derivative sample.
    """
    m, p = samples.m, samples.p
    v, w = samples.v, samples.w
    sigma = samples.right_points
    mu = samples.left_points

    if v == 0 or w == 0:
        WV = np.zeros((w * p, v * m), dtype=complex)
        WB = _stack(samples.left, "value").reshape(w * p, m) if w else np.zeros((0, m), dtype=complex)
        CV = (
            np.concatenate([pt.value for pt in samples.right], axis=1)
            if v
            else np.zeros((p, 0), dtype=complex)
        )
        return LoewnerQuadruple(WV, WV.copy(), WB, CV, samples.feedthrough.copy(), sigma, mu)

    Hr = _stack(samples.right, "value")  # (v, p, m)
    Hl = _stack(samples.left, "value")  # (w, p, m)

    diff = sigma[None, :] - mu[:, None]  # (w, v)
    close = np.abs(diff) <= hermite_rtol * np.maximum(1.0, np.abs(sigma))[None, :]
    safe = np.where(close, 1.0, diff)

    num_v = Hr[None, :, :, :] - Hl[:, None, :, :]
    num_av = (sigma[:, None, None] * Hr)[None, :, :, :] - (mu[:, None, None] * Hl)[:, None, :, :]
    wv = -num_v / safe[:, :, None, None]
    wav = -num_av / safe[:, :, None, None]

    for i, j in zip(*np.nonzero(close)):
        dH = samples.right[j].derivative
        if dH is None:
            dH = samples.left[i].derivative
        if dH is None:
            raise MissingDerivative(
                "Coincident right/left points need a derivative sample",
                field=f"right[{j}].dH",
                details={"left": int(i), "right": int(j), "s": repr(complex(sigma[j]))},
            )
        wv[i, j] = -dH
        wav[i, j] = -(Hr[j] + sigma[j] * dH)
    if close.any():
        logger.debug(f"Derivative branch used for {int(close.sum())} block(s)")

    WV = wv.transpose(0, 2, 1, 3).reshape(w * p, v * m)
    WAV = wav.transpose(0, 2, 1, 3).reshape(w * p, v * m)
    WB = Hl.reshape(w * p, m)
    CV = Hr.transpose(1, 0, 2).reshape(p, v * m)

    quad = LoewnerQuadruple(WV, WAV, WB, CV, samples.feedthrough.copy(), sigma, mu)
    logger.debug(f"Assembled {quad!r}")
    return quad


def sylvester_residuals(q: LoewnerQuadruple) -> Tuple[float, float]:
    """
    Relative residuals of the two Loewner identities.

    Returns
    -------
    (r1, r2) : tuple of float
        ``r1`` for ``WAV = S_w WV - L_w CV`` and ``r2`` for
        ``WAV = WV S_v - WB L_v``. Both are zero when a side is empty.
    """
    if q.v == 0 or q.w == 0:
        return 0.0, 0.0
    s_v = np.repeat(q.right_points, q.m)
    s_w = np.repeat(q.left_points, q.p)

    left_form = s_w[:, None] * q.WV - np.tile(q.CV, (q.w, 1))
    right_form = q.WV * s_v[None, :] - np.tile(q.WB, (1, q.v))

    def rel(form: np.ndarray) -> float:
        scale = max(np.linalg.norm(q.WAV), np.linalg.norm(form), np.finfo(float).tiny)
        return float(np.linalg.norm(q.WAV - form) / scale)

    return rel(left_form), rel(right_form)
