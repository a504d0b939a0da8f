"""
Pipeline Comparison
===================

Reduces one model through the intrusive reference, the sampled
pipeline and (for BT on imaginary-axis data) QuadBT, and reports the
relative H-infinity error of each reduced model per order together with
the relative difference of the Hankel-like values.

Example
-------
>>> setup = printed_example()
>>> rows = compare_variants(setup.model, samples, ["bt"], [3], base_config)
>>> round(rows[0].sampled_error, 4)
0.4039
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from src.core.base_variant import AXIS_RTOL, Mode, Variant, VariantConfig
from src.core.config import AppConfig
from src.core.logging import KERNEL_LOGGERS, LogContext, get_logger
from src.interpolation.epsilon import EpsilonContext
from src.reduction.bsa import bsa_reduce
from src.reduction.error import default_grid, grid_for_points, hsv_relative_difference, relative_hinf_error
from src.reduction.intrusive import intrusive_factors
from src.reduction.pipeline import prepare_reduction
from src.reduction.quadbt import QuadratureRule, quadbt_reduce, quadbt_weights
from src.sampling.loewner import LoewnerQuadruple
from src.sampling.samples import SampleSet, is_conjugate_closed
from src.sampling.statespace import StateSpace

# Module logger
logger = get_logger(__name__)


@dataclass
class ComparisonRow:
    """One variant at one order."""

    variant: str
    order: int
    intrusive_error: float
    sampled_error: float
    quadbt_error: Optional[float]
    hsv_difference: float

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)


def quadbt_applicable(samples: SampleSet, variant: Variant, mode: Mode) -> bool:
    """QuadBT needs BT on conjugate-closed imaginary-axis points."""
    if variant != Variant.BT or mode != Mode.DDP:
        return False
    points = np.concatenate([samples.right_points, samples.left_points])
    on_axis = bool(np.all(np.abs(points.real) <= AXIS_RTOL * np.maximum(np.abs(points), 1.0)))
    if not on_axis or np.any(points == 0):
        return False
    return is_conjugate_closed(samples.right_points) and is_conjugate_closed(samples.left_points)


def comparison_grid(samples: SampleSet, points: int) -> np.ndarray:
    """Default sweep merged with a grid around the sampled band."""
    return np.union1d(default_grid(points), grid_for_points(samples.right_points))


def compare_variants(
    model: StateSpace,
    samples: SampleSet,
    variants: Sequence[Union[Variant, str]],
    orders: Sequence[int],
    base_config: VariantConfig,
    eps_context: Optional[Union[EpsilonContext, str]] = None,
    app: Optional[AppConfig] = None,
    quadrature: Union[QuadratureRule, str] = QuadratureRule.EXPONENTIAL,
) -> List[ComparisonRow]:
    """
    Relative errors of intrusive, sampled and QuadBT models.

    Parameters
    ----------
    model : StateSpace
        Hurwitz model the samples were taken from.
    samples : SampleSet
    variants : sequence of Variant or str
    orders : sequence of int
        Reduced orders to evaluate.
    base_config : VariantConfig
        Mode, epsilon, gamma, fast path and free parameters shared by all
        variants; ``variant`` and ``order`` are overridden.
    eps_context : EpsilonContext or str, optional
    app : AppConfig, optional
    quadrature : QuadratureRule or str
        Rule for the QuadBT weights.

    Returns
    -------
    list of ComparisonRow
        Variant-major, in the given order.
    """
    app = app or AppConfig()
    model.require_hurwitz()
    orders = [int(r) for r in orders]
    grid = comparison_grid(samples, app.hinf.grid_points)
    full = LoewnerQuadruple.from_statespace(model)
    rank_guard = app.tolerances.rank_guard
    workers = app.performance.max_workers

    def error(rom: Any) -> float:
        return relative_hinf_error(model, rom, grid, app.hinf.refine_iterations, workers)

    rows: List[ComparisonRow] = []
    for name in variants:
        config = dataclasses.replace(base_config, variant=Variant(name), order=None)
        prepared = prepare_reduction(samples, config, eps_context, app)
        pair, gramians = intrusive_factors(model, config)
        hsv_diff = hsv_relative_difference(gramians.hankel_values(), prepared.hankel_values(), max(orders))

        weights = None
        if quadbt_applicable(samples, config.variant, config.mode):
            weights = (
                quadbt_weights(samples.right_points, quadrature),
                quadbt_weights(samples.left_points, quadrature),
            )

        # Per-solve DEBUG lines stay out of order sweeps
        with LogContext(KERNEL_LOGGERS, logging.INFO):
            for r in orders:
                intrusive_rom = bsa_reduce(full, pair, r, rank_guard)
                sampled_rom = prepared.reduce(r)
                quad_err = None
                if weights is not None:
                    quad_err = error(quadbt_reduce(prepared.loewner, weights, r, rank_guard))
                row = ComparisonRow(
                    variant=config.variant.value,
                    order=r,
                    intrusive_error=error(intrusive_rom),
                    sampled_error=error(sampled_rom),
                    quadbt_error=quad_err,
                    hsv_difference=hsv_diff,
                )
                logger.info(
                    f"{row.variant} r={r}: intrusive {row.intrusive_error:.4e}, "
                    f"sampled {row.sampled_error:.4e}"
                )
                rows.append(row)
    return rows
