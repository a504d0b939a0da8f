"""
Reduction Pipeline
==================

Samples in, reduced model out::

    SampleSet -> LoewnerQuadruple -> FactorPair -> (realify) -> ReducedModel

:func:`prepare_reduction` stops before the square-root step so that one
set of factors can be truncated to several orders.

The epsilon of an imaginary-axis run may be given or chosen from the
sampled frequencies with :func:`choose_epsilon`; the resolved value and
its bounds travel with the result.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from src.core.base_variant import AXIS_RTOL, FactorPair, Mode, VariantConfig
from src.core.config import AppConfig
from src.core.linalg import svd
from src.interpolation.epsilon import EpsilonContext, EpsilonPlan, choose_epsilon
from src.reduction.bsa import RANK_GUARD, bsa_reduce
from src.reduction.model import ReducedModel
from src.reduction.realify import realify_factors, realify_quadruple
from src.sampling.loewner import LoewnerQuadruple, assemble
from src.sampling.samples import SampleSet, is_conjugate_closed
from src.variants.registry import compute_factors

# Module logger
logger = logging.getLogger(__name__)


@dataclass
class ReductionResult:
    """
    Outcome of a sampled reduction.

    Attributes
    ----------
    rom : ReducedModel
    factors : FactorPair
        Factors before realification.
    config : VariantConfig
        Configuration with the resolved epsilon.
    epsilon_plan : EpsilonPlan, optional
        Present when epsilon was chosen automatically.
    """

    rom: ReducedModel
    factors: FactorPair
    config: VariantConfig
    epsilon_plan: Optional[EpsilonPlan] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def hankel_values(self) -> np.ndarray:
        return self.rom.hankel_values

    def run_config(self) -> Dict[str, Any]:
        data = self.config.to_dict()
        if self.epsilon_plan is not None:
            data["epsilon_plan"] = self.epsilon_plan.to_dict()
        data.update(self.metadata)
        return data


def resolve_epsilon(
    samples: SampleSet,
    config: VariantConfig,
    context: Union[EpsilonContext, str],
    app: Optional[AppConfig] = None,
) -> Tuple[VariantConfig, Optional[EpsilonPlan]]:
    """
    Choose epsilon from the right frequencies and return ``(config, plan)``.

    ADI runs take their shifts from the samples, so the configuration is
    returned unchanged with no plan.
    """
    app = app or AppConfig()
    if config.mode == Mode.ADI:
        logger.warning("Automatic epsilon ignored: ADI shifts come from the sample offsets")
        return config, None
    plan = choose_epsilon(
        samples.right_points.imag,
        context=context,
        delta=app.epsilon.default_delta,
        safety_factor=app.epsilon.safety_factor,
    )
    logger.info(f"Chose epsilon={plan.epsilon:.4e} ({plan.context.value}, binding {plan.binding})")
    return dataclasses.replace(config, eps=plan.epsilon), plan


def _can_realify(loewner: LoewnerQuadruple) -> bool:
    return is_conjugate_closed(loewner.right_points) and is_conjugate_closed(loewner.left_points)


def projected_hankel_values(loewner: LoewnerQuadruple, pair: FactorPair) -> np.ndarray:
    """Singular values of ``(T_w L_q)* WV (T_v L_p)``."""
    return svd(pair.left_factor.conj().T @ loewner.WV @ pair.right_factor)[1]


@dataclass
class PreparedReduction:
    """
    Data and factors ready for the square-root step.

    One preparation serves any number of orders, so order sweeps solve
    the variant's equations once.

    Attributes
    ----------
    loewner : LoewnerQuadruple
        The assembled (complex) quadruple.
    pair : FactorPair
        Factors of the variant on ``loewner``.
    data, factors : LoewnerQuadruple, FactorPair
        What the square-root step consumes: the realified quadruple and
        factors when ``realified`` is set, otherwise ``loewner`` and ``pair``.
    config : VariantConfig
        Configuration with the resolved epsilon.
    epsilon_plan : EpsilonPlan, optional
    realified : bool
    """

    loewner: LoewnerQuadruple
    pair: FactorPair
    data: LoewnerQuadruple
    factors: FactorPair
    config: VariantConfig
    epsilon_plan: Optional[EpsilonPlan] = None
    realified: bool = False
    rank_guard: float = RANK_GUARD

    def hankel_values(self) -> np.ndarray:
        """Hankel-like values without building a model."""
        return projected_hankel_values(self.data, self.factors)

    def reduce(self, order: Optional[Union[int, float]] = None) -> ReducedModel:
        rom = bsa_reduce(self.data, self.factors, order, self.rank_guard)
        rom.metadata.update(
            {
                "pipeline": "sampled",
                "variant": self.config.variant.value,
                "mode": self.config.mode.value,
                "epsilon": self.config.eps,
                "fast_path": self.config.fast_path,
                "route": self.pair.metadata.get("route"),
            }
        )
        return rom


def prepare_reduction(
    samples: SampleSet,
    config: VariantConfig,
    eps_context: Optional[Union[EpsilonContext, str]] = None,
    app: Optional[AppConfig] = None,
    realify_data: bool = True,
) -> PreparedReduction:
    """
    Assemble the Loewner quadruple and compute the variant's factors.

    Parameters
    ----------
    samples : SampleSet
    config : VariantConfig
    eps_context : EpsilonContext or str, optional
        Choose epsilon automatically for this context.
    app : AppConfig, optional
        Tolerances and thread settings.
    realify_data : bool, default=True
        Realify the data and factors of conjugate-closed sample sets so the
        model comes out real.
    """
    app = app or AppConfig()
    tol = app.tolerances
    plan = None
    if eps_context is not None:
        config, plan = resolve_epsilon(samples, config, eps_context, app)
    config = dataclasses.replace(
        config,
        max_workers=config.max_workers or app.performance.max_workers,
        cond_guard=min(config.cond_guard, tol.cond_guard),
    )

    loewner = assemble(samples, hermite_rtol=tol.hermite_rel)
    logger.info(f"Assembled {loewner!r}")
    pair = compute_factors(loewner, config)

    data, factors = loewner, pair
    realified = realify_data and _can_realify(loewner)
    if realified:
        data = realify_quadruple(loewner, tol.realify_residue)
        factors = realify_factors(pair, loewner.right_points, loewner.left_points)

    return PreparedReduction(
        loewner=loewner,
        pair=pair,
        data=data,
        factors=factors,
        config=config,
        epsilon_plan=plan,
        realified=realified,
        rank_guard=tol.rank_guard,
    )


def reduce_samples(
    samples: SampleSet,
    config: VariantConfig,
    eps_context: Optional[Union[EpsilonContext, str]] = None,
    app: Optional[AppConfig] = None,
    realify_data: bool = True,
) -> ReductionResult:
    """
    Build a reduced model of order ``config.order`` from samples.

    Arguments as for :func:`prepare_reduction`.

    Returns
    -------
    ReductionResult
    """
    prepared = prepare_reduction(samples, config, eps_context, app, realify_data)
    rom = prepared.reduce(prepared.config.order)
    return ReductionResult(
        rom=rom,
        factors=prepared.pair,
        config=prepared.config,
        epsilon_plan=prepared.epsilon_plan,
        metadata={"realified": prepared.realified},
    )


def infer_mode(samples: SampleSet) -> Mode:
    """DDP when every point lies on the imaginary axis, ADI otherwise."""
    points = np.concatenate([samples.right_points, samples.left_points])
    scale = np.maximum(np.abs(points), 1.0)
    if np.all(np.abs(points.real) <= AXIS_RTOL * scale):
        return Mode.DDP
    return Mode.ADI
