"""
Pytest configuration and shared fixtures for testing.
"""

import numpy as np
import pytest

from src.sampling.models import printed_example, synth_model
from src.sampling.samples import conjugate_points, generate_samples

RIGHT_FREQS = [0.3, 1.0, 3.0, 10.0, 30.0, 100.0]
LEFT_FREQS = [0.4, 1.5, 4.0, 12.0, 40.0, 120.0]


@pytest.fixture
def rng():
    """Seeded random generator."""
    return np.random.default_rng(1234)


@pytest.fixture
def first_order():
    """G(s) = 1 / (s + 1)."""
    from src.sampling.statespace import StateSpace

    return StateSpace(A=[[-1.0]], B=[[1.0]], C=[[1.0]], D=[[0.0]])


@pytest.fixture
def passive_model():
    """4th-order SISO model that satisfies every variant's assumptions."""
    return synth_model(4, seed=3, passive=True)


@pytest.fixture
def mimo_model():
    """6th-order model with two inputs and two outputs."""
    return synth_model(6, m=2, p=2, seed=5, passive=True)


@pytest.fixture
def adi_samples(passive_model):
    """Right-half-plane samples at 0.5 +/- j omega."""
    return generate_samples(
        passive_model,
        conjugate_points(RIGHT_FREQS, 0.5),
        conjugate_points(LEFT_FREQS, 0.5),
    )


@pytest.fixture
def axis_samples(passive_model):
    """Imaginary-axis samples at +/- j omega."""
    return generate_samples(
        passive_model,
        conjugate_points(RIGHT_FREQS),
        conjugate_points(LEFT_FREQS),
    )


@pytest.fixture
def example():
    """The printed 8th-order illustration problem."""
    return printed_example()


@pytest.fixture
def example_samples(example):
    """Samples of the illustration model at its printed points."""
    return generate_samples(example.model, example.right_points, example.left_points)
