"""
Error Estimates
===============

H-infinity norms estimated by a frequency sweep of the largest singular
value followed by golden-section refinement around the grid maximizer.
Works for anything that can be evaluated at ``j omega``: full models,
reduced models and error systems alike.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Protocol, Sequence, Tuple

import numpy as np

from src.core.exceptions import EmptyGrid, ReductionError
from src.core.parallel import parallel_map

# Module logger
logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 400
DEFAULT_REFINE_ITERATIONS = 60
GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


class TransferFunction(Protocol):
    def transfer(self, s: complex) -> np.ndarray: ...


@dataclass
class HinfEstimate:
    """
    Estimated H-infinity norm.

    Attributes
    ----------
    value : float
        Largest singular value found.
    frequency : float
        Frequency where it was found.
    grid_points : int
        Size of the sweep grid.
    """

    value: float
    frequency: float
    grid_points: int

    def __float__(self) -> float:
        return self.value


def default_grid(points: int = DEFAULT_GRID_POINTS, low: float = 1e-4, high: float = 1e4) -> np.ndarray:
    """``omega = 0`` followed by ``points`` log-spaced frequencies."""
    return np.concatenate([[0.0], np.logspace(np.log10(low), np.log10(high), points)])


def grid_for_points(points: Sequence[complex], per_decade: int = 50) -> np.ndarray:
    """Log grid covering the sampled band two decades beyond each end."""
    omegas = np.abs(np.asarray(points, dtype=complex).imag)
    omegas = omegas[omegas > 0]
    if omegas.size == 0:
        return default_grid()
    low = np.log10(omegas.min()) - 2.0
    high = np.log10(omegas.max()) + 2.0
    count = max(int((high - low) * per_decade), 200)
    return np.concatenate([[0.0], np.logspace(low, high, count)])


def _sigma_max(G: np.ndarray) -> float:
    return float(np.linalg.norm(G, 2)) if G.size else 0.0


def _sweep(f: Callable[[float], float], grid: np.ndarray, max_workers: Optional[int]) -> np.ndarray:
    return np.asarray(parallel_map(f, list(grid), max_workers=max_workers), dtype=float)


def _golden_max(f: Callable[[float], float], a: float, b: float, iterations: int) -> Tuple[float, float]:
    """Maximize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iterations):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def peak(
    f: Callable[[float], float],
    grid: Sequence[float],
    refine_iterations: int = DEFAULT_REFINE_ITERATIONS,
    max_workers: Optional[int] = None,
) -> HinfEstimate:
    """
    Largest value of ``f`` over a frequency grid, refined locally.

    Raises
    ------
    EmptyGrid
        If ``grid`` is empty.
    """
    grid = np.sort(np.asarray(grid, dtype=float).ravel())
    if grid.size == 0:
        raise EmptyGrid("Frequency grid is empty")
    values = _sweep(f, grid, max_workers)
    k = int(np.argmax(values))
    best = HinfEstimate(float(values[k]), float(grid[k]), int(grid.size))
    if grid.size > 1 and refine_iterations > 0:
        a = grid[max(k - 1, 0)]
        b = grid[min(k + 1, grid.size - 1)]
        x, fx = _golden_max(f, float(a), float(b), refine_iterations)
        if fx > best.value:
            best = HinfEstimate(float(fx), float(x), int(grid.size))
    return best


def hinf_norm(
    system: TransferFunction,
    grid: Optional[Sequence[float]] = None,
    refine_iterations: int = DEFAULT_REFINE_ITERATIONS,
    max_workers: Optional[int] = None,
) -> HinfEstimate:
    """
    Estimate ``||G||_inf``.

    Examples
    --------
    >>> ss = StateSpace(A=[[-1.0]], B=[[1.0]], C=[[1.0]], D=[[0.0]])
    >>> round(hinf_norm(ss).value, 6)
    1.0
    """
    grid = default_grid() if grid is None else grid
    return peak(lambda w: _sigma_max(system.transfer(1j * w)), grid, refine_iterations, max_workers)


def relative_hinf_error(
    full: TransferFunction,
    rom: TransferFunction,
    grid: Optional[Sequence[float]] = None,
    refine_iterations: int = DEFAULT_REFINE_ITERATIONS,
    max_workers: Optional[int] = None,
) -> float:
    """
    Estimate ``||G - G_r||_inf / ||G||_inf``.

    Raises
    ------
    EmptyGrid
        If ``grid`` is empty.
    ReductionError
        If the full model has zero norm.
    """
    grid = default_grid() if grid is None else grid

    def error_gain(w: float) -> float:
        s = 1j * w
        return _sigma_max(full.transfer(s) - rom.transfer(s))

    num = peak(error_gain, grid, refine_iterations, max_workers)
    den = hinf_norm(full, grid, refine_iterations, max_workers)
    if den.value == 0.0:
        raise ReductionError("Full model has zero H-infinity norm")
    rel = num.value / den.value
    logger.debug(
        f"Relative H-inf error {rel:.6e} (error peak at omega={num.frequency:.4g}, "
        f"norm peak at omega={den.frequency:.4g})"
    )
    return rel


def hsv_relative_difference(a: Sequence[float], b: Sequence[float], k: Optional[int] = None) -> float:
    """
    ``||a[:k] - b[:k]|| / ||a[:k]||`` for two Hankel value sequences.

    ``k`` defaults to the shorter length.

    Raises
    ------
    ReductionError
        If ``a[:k]`` is zero or ``k`` is not positive.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    n = min(a.size, b.size)
    k = n if k is None else min(int(k), n)
    if k < 1:
        raise ReductionError("Need at least one Hankel value to compare", details={"k": k})
    ref = float(np.linalg.norm(a[:k]))
    if ref == 0.0:
        raise ReductionError("Reference Hankel values are zero")
    return float(np.linalg.norm(a[:k] - b[:k]) / ref)
