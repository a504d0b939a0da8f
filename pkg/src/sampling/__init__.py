"""
Sampling
========

State-space models, transfer-function samples and the Loewner quadruple
assembled from them.

Modules
-------
statespace
    ``StateSpace`` models, transfer-function and derivative evaluation.
samples
    ``SampleSet`` with its invariants, grid parsing and sample files.
loewner
    Loewner quadruple ``(WV, WAV, WB, CV)`` including the Hermite branch.
models
    The printed illustration model and random stable test systems.
"""

from src.sampling.loewner import LoewnerQuadruple, assemble, sylvester_residuals
from src.sampling.models import EXAMPLE_ERRORS, ExampleSetup, printed_example, synth_model
from src.sampling.samples import (
    SamplePoint,
    SampleSet,
    conjugate_points,
    generate_samples,
    is_conjugate_closed,
    parse_grid,
    read_samples,
    write_samples,
)
from src.sampling.statespace import StateSpace, eval_derivative, eval_transfer, read_model, write_model

__all__ = [
    "StateSpace",
    "eval_transfer",
    "eval_derivative",
    "read_model",
    "write_model",
    "SamplePoint",
    "SampleSet",
    "conjugate_points",
    "generate_samples",
    "is_conjugate_closed",
    "parse_grid",
    "read_samples",
    "write_samples",
    "LoewnerQuadruple",
    "assemble",
    "sylvester_residuals",
    "ExampleSetup",
    "EXAMPLE_ERRORS",
    "printed_example",
    "synth_model",
]
