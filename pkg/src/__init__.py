"""
Loewner-BT: Non-Intrusive Balanced Truncation
=============================================

Builds reduced-order linear models from transfer-function samples with
seven balanced-truncation variants (BT, LQG, H-infinity, positive-real,
bounded-real, self-weighted and balanced stochastic truncation), on
right-half-plane samples (ADI mode) or imaginary-axis samples (data-driven
projection mode).

Modules
-------
core
    Exceptions, configuration, logging, thread pools, matrix equations
    and the variant base class.
sampling
    State-space models, samples and the Loewner quadruple.
interpolation
    Shift systems, free parameters and epsilon selection.
variants
    The seven variants.
reduction
    Square-root reduction, realification, the intrusive reference,
    QuadBT and error estimates.
reporters
    Output formatters (CLI, CSV, JSON).

Example
-------
>>> from src.core.base_variant import VariantConfig
>>> from src.reduction.pipeline import reduce_samples
>>> from src.sampling import generate_samples, printed_example
>>>
>>> setup = printed_example()
>>> samples = generate_samples(setup.model, setup.right_points, setup.left_points)
>>> config = VariantConfig(variant="bt", mode="ddp", order=3, zeta_right=setup.zeta_right)
>>> result = reduce_samples(samples, config)
>>> result.rom.order
3

See Also
--------
numpy, scipy : Dense linear algebra and matrix equations.
"""

__version__ = "0.1.0"
__author__ = "Loewner-BT Team"
__license__ = "MIT"

__all__ = [
    "__version__",
    "__author__",
    "__license__",
]
