"""
Intrusive Reference
===================

Model-based balanced truncation for every variant: the Gramians of the
state-space model are factored and passed through the same square-root
step as the sampled data, with the quadruple ``(I, A, B, C)``.
"""

from __future__ import annotations

import logging
from typing import Optional, Tuple, Union

import numpy as np

from src.core.base_variant import FactorPair, VariantConfig
from src.reduction.bsa import RANK_GUARD, bsa_reduce
from src.reduction.gramians import GramianPair, intrusive_gramians
from src.reduction.model import ReducedModel
from src.sampling.loewner import LoewnerQuadruple
from src.sampling.statespace import StateSpace

# Module logger
logger = logging.getLogger(__name__)


def intrusive_factors(ss: StateSpace, config: VariantConfig) -> Tuple[FactorPair, GramianPair]:
    """Real Gramian factors of a model with identity transformations."""
    gramians = intrusive_gramians(ss, config.variant, config.gamma)
    Lp, Lq = gramians.factors
    eye = np.eye(ss.n)
    pair = FactorPair(
        Tv=eye,
        Lp=Lp,
        Tw=eye,
        Lq=Lq,
        variant=config.variant,
        mode=config.mode,
        metadata={"route": "intrusive"},
    )
    return pair, gramians


def intrusive_reduce(
    ss: StateSpace,
    config: VariantConfig,
    order: Optional[Union[int, float]] = None,
    rank_guard: float = RANK_GUARD,
) -> ReducedModel:
    """
    Reduce a state-space model with a variant's exact Gramians.

    Parameters
    ----------
    ss : StateSpace
        Hurwitz model.
    config : VariantConfig
        Variant and ``gamma``; ``order`` is used when the argument is None.
    order : int or float, optional

    Returns
    -------
    ReducedModel
        Real reduced model with the variant's Hankel-like values.
    """
    ss.require_hurwitz()
    pair, _ = intrusive_factors(ss, config)
    rom = bsa_reduce(
        LoewnerQuadruple.from_statespace(ss),
        pair,
        config.order if order is None else order,
        rank_guard,
    )
    rom.metadata.update({"pipeline": "intrusive", "variant": config.variant.value})
    logger.info(f"Intrusive {config.variant.value} ROM of order {rom.order} from n={ss.n}")
    return rom
