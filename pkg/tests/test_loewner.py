"""
Tests for the Loewner assembly.
"""

import numpy as np
import pytest

from src.core.exceptions import MissingDerivative
from src.sampling.loewner import LoewnerQuadruple, assemble, sylvester_residuals
from src.sampling.samples import SamplePoint, SampleSet, conjugate_points, generate_samples


def scalar_set(sigma, h_sigma, mu, h_mu, derivative=None):
    """One right and one left SISO sample."""
    return SampleSet(
        right=[SamplePoint(s=sigma, value=[[h_sigma]], derivative=derivative)],
        left=[SamplePoint(s=mu, value=[[h_mu]])],
        feedthrough=[[0.0]],
        m=1,
        p=1,
    )


def resolvent_factors(model, right, left):
    """Tangential generalized observability and controllability matrices."""
    n = model.n
    R = np.hstack([np.linalg.solve(s * np.eye(n) - model.A, model.B) for s in right])
    Ob = np.vstack([model.C @ np.linalg.inv(s * np.eye(n) - model.A) for s in left])
    return Ob, R


class TestAssemble:
    """Tests for assemble."""

    def test_divided_differences(self):
        """Test the scalar Loewner and shifted Loewner entries."""
        q = assemble(scalar_set(2.0, 0.5, 1.0, 0.25))
        np.testing.assert_allclose(q.WV, [[-0.25]])
        np.testing.assert_allclose(q.WAV, [[-0.75]])
        np.testing.assert_allclose(q.WB, [[0.25]])
        np.testing.assert_allclose(q.CV, [[0.5]])

    def test_hermite_branch(self):
        """Test that coincident points use the derivative."""
        q = assemble(scalar_set(1.0, 0.5, 1.0, 0.5, derivative=[[-0.25]]))
        np.testing.assert_allclose(q.WV, [[0.25]])
        np.testing.assert_allclose(q.WAV, [[-(0.5 - 0.25)]])

    def test_missing_derivative(self):
        """Test that coincident points without a derivative are rejected."""
        with pytest.raises(MissingDerivative):
            assemble(scalar_set(1.0, 0.5, 1.0, 0.5))

    def test_realization_identities(self, mimo_model):
        """Test WV = O R, WAV = O A R, WB = O B and CV = C R."""
        right = conjugate_points([0.5, 2.0, 8.0], 0.2)
        left = conjugate_points([0.7, 3.0, 9.0], 0.2)
        samples = generate_samples(mimo_model, right, left)
        q = assemble(samples)
        Ob, R = resolvent_factors(mimo_model, right, left)

        assert q.WV.shape == (12, 12)
        np.testing.assert_allclose(q.WV, Ob @ R, atol=1e-10)
        np.testing.assert_allclose(q.WAV, Ob @ mimo_model.A @ R, atol=1e-10)
        np.testing.assert_allclose(q.WB, Ob @ mimo_model.B, atol=1e-12)
        np.testing.assert_allclose(q.CV, mimo_model.C @ R, atol=1e-12)

    def test_sylvester_identities(self, adi_samples):
        """Test that the two Loewner identities hold to roundoff."""
        r1, r2 = sylvester_residuals(assemble(adi_samples))
        assert r1 < 1e-10
        assert r2 < 1e-10

    def test_empty_side(self):
        """Test a set without left points."""
        samples = SampleSet(
            right=[SamplePoint(s=1j, value=[[1.0]]), SamplePoint(s=-1j, value=[[1.0]])],
            left=[],
            feedthrough=[[0.25]],
            m=1,
            p=1,
        )
        q = assemble(samples)
        assert q.WV.shape == (0, 2)
        assert sylvester_residuals(q) == (0.0, 0.0)

    def test_block(self, mimo_model):
        """Test block extraction in a MIMO quadruple."""
        q = LoewnerQuadruple.from_statespace(mimo_model)
        np.testing.assert_array_equal(q.block("WAV", 1, 2), mimo_model.A[2:4, 4:6])
        assert (q.m, q.p, q.v, q.w) == (2, 2, 0, 0)
