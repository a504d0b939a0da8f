"""
Reference Models
================

The printed eighth-order illustration model and a seeded generator of
random stable test systems.

Functions
---------
printed_example
    The 8th-order single-input single-output model with its imaginary-axis
    interpolation points, the printed free parameter and reference errors.
synth_model
    Random stable model; optionally passive, contractive and minimum phase.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np
import scipy.linalg as sla

from src.core.exceptions import AssumptionViolated
from src.sampling.statespace import StateSpace

# Module logger
logger = logging.getLogger(__name__)


_EXAMPLE_A = [
    [-22.1414, -14.1915, -35.8543, -7.8301, 54.2479, -1.6149, 4.5713, -47.9895],
    [-1.4098, 6.0485, -2.0663, 36.2832, 88.6974, 15.7929, 74.5229, -30.3651],
    [-20.9974, -3.8320, -7.5951, -40.6679, -71.4159, -45.2401, -39.4774, -4.9186],
    [-107.6001, -67.2020, -108.3961, -33.5432, 43.9644, -77.3467, 21.1433, -109.2904],
    [143.7150, 66.7452, 146.1617, 81.1110, -20.7467, 135.0017, 12.6135, 158.4851],
    [-101.2836, -48.3008, -93.7796, -47.9424, -20.5617, -89.5448, -28.7377, -78.5117],
    [129.4943, 22.2846, 56.8624, 112.4968, 85.9715, 148.5772, 61.3542, 106.4938],
    [65.1568, 63.9156, 113.2290, -42.8674, -170.4269, -12.2243, -97.6582, 98.1684],
]
_EXAMPLE_B = [0.6007, 1.6263, -0.4206, 2.5576, -2.1955, 1.2682, -0.4758, -3.1936]
_EXAMPLE_C = [1.9237, 1.2498, 1.3247, 1.5407, 1.1059, 1.3546, 0.9754, 1.2928]
_EXAMPLE_D = 0.2378
_EXAMPLE_ZETA = [
    1.0075 + 0.0417j,
    1.0075 - 0.0417j,
    1.0080 - 0.0792j,
    1.0080 + 0.0792j,
    0.9845 - 0.2113j,
    0.9845 + 0.2113j,
]

# Order-3 relative H-infinity errors: (intrusive, non-intrusive)
EXAMPLE_ERRORS: Dict[str, Tuple[float, float]] = {
    "bt": (0.4039, 0.4039),
    "lqg": (0.4037, 0.4037),
    "hinf": (0.4038, 0.4037),
    "pr": (0.4014, 0.4013),
    "br": (0.4045, 0.4045),
    "sw": (0.4014, 0.4014),
    "bst": (0.4014, 0.4014),
}


@dataclass
class ExampleSetup:
    """
    The printed illustration problem.

    Attributes
    ----------
    model : StateSpace
        8th-order SISO model (stable, minimum phase, passive).
    right_points, left_points : np.ndarray
        ``+/- j9.99, +/- j19.99, +/- j29.99`` and ``+/- j10, +/- j20, +/- j30``.
    zeta_right : np.ndarray, shape (6, 1)
        Free parameter of the right interpolant.
    zeta_left : np.ndarray, shape (1, 6)
        Free parameter of the left interpolant (the transpose).
    gamma : float
        H-infinity level used for that variant.
    order : int
        Reduced order of the reference runs.
    errors : dict
        Reference relative errors per variant.
    """

    model: StateSpace
    right_points: np.ndarray
    left_points: np.ndarray
    zeta_right: np.ndarray
    zeta_left: np.ndarray
    gamma: float = 2.0
    order: int = 3
    errors: Dict[str, Tuple[float, float]] = field(default_factory=lambda: dict(EXAMPLE_ERRORS))


def _paired(omegas: Tuple[float, ...]) -> np.ndarray:
    pts = []
    for omega in omegas:
        pts.extend([1j * omega, -1j * omega])
    return np.asarray(pts, dtype=complex)


def printed_example() -> ExampleSetup:
    """Return the 8th-order illustration model and its data."""
    model = StateSpace(
        A=np.array(_EXAMPLE_A),
        B=np.array(_EXAMPLE_B).reshape(-1, 1),
        C=np.array(_EXAMPLE_C).reshape(1, -1),
        D=np.array([[_EXAMPLE_D]]),
    )
    zeta = np.asarray(_EXAMPLE_ZETA, dtype=complex).reshape(-1, 1)
    return ExampleSetup(
        model=model,
        right_points=_paired((9.99, 19.99, 29.99)),
        left_points=_paired((10.0, 20.0, 30.0)),
        zeta_right=zeta,
        zeta_left=zeta.T.copy(),
    )


def _modal_blocks(n: int, rng: np.random.Generator) -> Tuple[np.ndarray, float]:
    """Block-diagonal normal matrix with eigenvalues -a +/- jb; returns (M, min a)."""
    n_pairs = n // 2
    decay = 10.0 ** rng.uniform(-1.0, 1.0, size=n_pairs + 1)
    freqs = np.logspace(-1.0, 2.0, max(n_pairs, 1))
    rng.shuffle(freqs)
    blocks = []
    for k in range(n_pairs):
        a, b = decay[k], freqs[k]
        blocks.append(np.array([[-a, b], [-b, -a]]))
    if n % 2:
        blocks.append(np.array([[-decay[-1]]]))
    used = decay[:n_pairs] if n % 2 == 0 else np.append(decay[:n_pairs], decay[-1])
    return sla.block_diag(*blocks), float(np.min(used))


def synth_model(
    n: int,
    m: int = 1,
    p: int = 1,
    seed: int = 0,
    passive: bool = False,
) -> StateSpace:
    """
    Random stable model with a log-spread spectrum.

    Eigenvalues are ``-a +/- jb`` with ``a`` in [0.1, 10] and ``b``
    log-spread over [0.1, 100], rotated by a random orthogonal matrix.

    With ``passive=True`` (square only) the model is
    ``(Q^T (J - R) Q, B, B^T, 0.25 I)`` scaled so that
    ``||G - D||_inf <= 0.5``: it is then positive-real, has
    ``||G||_inf < 1``, and ``A - B D^{-1} C`` is Hurwitz, so every variant's
    feedthrough assumption holds. Otherwise ``B`` and ``C`` are independent
    with the same bound and ``D`` is random.

    Raises
    ------
    AssumptionViolated
        If ``passive`` is requested for ``m != p``.
    """
    if n < 1 or m < 1 or p < 1:
        raise ValueError("n, m and p must be positive")
    if passive and m != p:
        raise AssumptionViolated(
            "Passive models must be square",
            details={"m": m, "p": p},
        )
    rng = np.random.default_rng(seed)
    M, a_min = _modal_blocks(n, rng)
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    A = Q.T @ M @ Q

    B = rng.standard_normal((n, m))
    if passive:
        B *= np.sqrt(0.5 * a_min) / np.linalg.norm(B, 2)
        C = B.T.copy()
        D = 0.25 * np.eye(p)
    else:
        C = rng.standard_normal((p, n))
        scale = np.sqrt(0.5 * a_min / (np.linalg.norm(B, 2) * np.linalg.norm(C, 2)))
        B *= scale
        C *= scale
        D = 0.1 * rng.standard_normal((p, m))

    model = StateSpace(A=A, B=B, C=C, D=D)
    logger.debug(f"Synthesized {model!r} (seed={seed}, passive={passive}, a_min={a_min:.3g})")
    return model
