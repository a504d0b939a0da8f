"""
Tests for the reduction modules.
"""

import os
import tempfile

import numpy as np
import pytest

from src.core.base_variant import FactorPair, Variant, VariantConfig
from src.core.exceptions import (
    AssumptionViolated,
    EmptyGrid,
    GammaOutOfRange,
    NotConjugateClosed,
    OrderOutOfRange,
    ParseError,
    RankDeficient,
    ReductionError,
    ResidueTooLarge,
    TooFewNodes,
    WeightCountMismatch,
)
from src.interpolation.pork import i_pork
from src.interpolation.shift import build_shift_system
from src.reduction.bsa import bsa_reduce, numerical_rank, resolve_order, select_order
from src.reduction.diagnostics import is_bounded_real, is_minimum_phase, is_positive_real
from src.reduction.error import (
    default_grid,
    grid_for_points,
    hinf_norm,
    hsv_relative_difference,
    peak,
    relative_hinf_error,
)
from src.reduction.gramians import intrusive_gramians
from src.reduction.intrusive import intrusive_factors, intrusive_reduce
from src.reduction.model import Field, ReducedModel, read_rom, write_rom
from src.reduction.quadbt import quadbt_factors, quadbt_reduce, quadbt_weights, trapezoid_weights
from src.reduction.realify import (
    conjugate_transform,
    point_pairing,
    real_part_checked,
    realify,
    realify_factors,
    realify_quadruple,
)
from src.sampling.loewner import LoewnerQuadruple, assemble
from src.sampling.samples import conjugate_points, generate_samples
from src.sampling.statespace import StateSpace
from src.variants.registry import compute_factors


def scalar_model(b, c, d, a=-1.0):
    return StateSpace(A=[[a]], B=[[b]], C=[[c]], D=[[d]])


class TestOrderSelection:
    """Tests for numerical_rank, select_order and resolve_order."""

    def test_numerical_rank(self):
        """Test the relative rank cut-off."""
        assert numerical_rank(np.array([1.0, 1e-6, 1e-13])) == 2
        assert numerical_rank(np.zeros(3)) == 0
        assert numerical_rank(np.array([])) == 0

    def test_select_order(self):
        """Test the energy threshold rule."""
        values = np.array([1.0, 0.1, 0.01])
        assert select_order(values, 0.05) == 1
        assert select_order(values, 1e-3) == 2
        assert select_order(values, 1e-9) == 3

    def test_select_order_range(self):
        """Test that thresholds outside (0, 1) are refused."""
        with pytest.raises(OrderOutOfRange):
            select_order(np.array([1.0]), 1.0)

    def test_resolve_order(self):
        """Test integers, thresholds and the default rank."""
        values = np.array([1.0, 0.1, 0.01, 1e-14])
        assert resolve_order(values, 2) == 2
        assert resolve_order(values, 0.05) == 1
        assert resolve_order(values, None) == 3

    def test_rank_deficient(self):
        """Test that an order above the rank raises RankDeficient."""
        with pytest.raises(RankDeficient) as exc_info:
            resolve_order(np.array([1.0, 0.5, 1e-15]), 3)
        assert exc_info.value.details["achievable_rank"] == 2

    def test_order_zero(self):
        """Test that order 0 is out of range."""
        with pytest.raises(OrderOutOfRange):
            resolve_order(np.array([1.0]), 0)


class TestBSA:
    """Tests for bsa_reduce."""

    def test_identity_quadruple(self):
        """Test the square-root step on a diagonal quadruple."""
        q = LoewnerQuadruple(
            WV=np.eye(2),
            WAV=-np.eye(2),
            WB=np.ones((2, 1)),
            CV=np.ones((1, 2)),
            D=np.zeros((1, 1)),
        )
        eye = np.eye(2)
        rom = bsa_reduce(q, FactorPair(eye, eye, eye, eye), 2)
        np.testing.assert_allclose(rom.A, -np.eye(2))
        assert rom.field == Field.REAL
        np.testing.assert_allclose(rom.hankel_values, [1.0, 1.0])

    def test_complex_data_gives_complex_model(self, adi_samples):
        """Test the field of a model built from complex data."""
        q = assemble(adi_samples)
        rom = bsa_reduce(q, compute_factors(q, VariantConfig()), 2)
        assert rom.field == Field.COMPLEX
        assert rom.order == 2
        assert rom.hankel_values.size == 12

    def test_order_above_rank(self, adi_samples):
        """Test that orders beyond the model order are rank deficient."""
        q = assemble(adi_samples)
        with pytest.raises(RankDeficient):
            bsa_reduce(q, compute_factors(q, VariantConfig()), 10)


class TestRealify:
    """Tests for the conjugate-pair transform."""

    def test_transform_is_unitary(self):
        """Test J* J = I for pairs, real points and blocks."""
        J = conjugate_transform([(0, 2), (1,)], 2)
        np.testing.assert_allclose(J.conj().T @ J, np.eye(6), atol=1e-15)

    def test_pairing_needs_closure(self):
        """Test that a lone complex point is refused."""
        with pytest.raises(NotConjugateClosed):
            point_pairing([1j, 2j, -1j])

    def test_residue_check(self):
        """Test that a complex matrix is not silently made real."""
        np.testing.assert_array_equal(real_part_checked(np.array([[1.0 + 1e-14j]]), "M"), [[1.0]])
        with pytest.raises(ResidueTooLarge):
            real_part_checked(np.array([[1.0 + 1.0j]]), "M")

    def test_realified_interpolant(self, passive_model):
        """Test that realifying an interpolant keeps its transfer function."""
        samples = generate_samples(passive_model, conjugate_points([1.0, 3.0], 0.5), [])
        sv = build_shift_system(samples.right_points, 1)
        CV = np.hstack([pt.value for pt in samples.right])
        rom = i_pork(sv, CV, samples.feedthrough)
        real = realify(rom, point_pairing(samples.right_points))
        assert real.field == Field.REAL
        assert np.isrealobj(real.A)
        for s in (0.3j, 2.0, 7j):
            np.testing.assert_allclose(real.transfer(s), rom.transfer(s), atol=1e-12)

    def test_realify_wrong_pairing(self):
        """Test that a pairing of the wrong size is refused."""
        rom = ReducedModel(A=-np.eye(3), B=np.ones((3, 1)), C=np.ones((1, 3)), D=[[0.0]])
        with pytest.raises(NotConjugateClosed):
            realify(rom, [(0, 1)])

    def test_realified_quadruple_and_factors(self, passive_model, adi_samples):
        """Test that the real data give a real model with the same transfer function."""
        q = assemble(adi_samples)
        pair = compute_factors(q, VariantConfig())
        complex_rom = bsa_reduce(q, pair, passive_model.n)
        real_q = realify_quadruple(q)
        real_pair = realify_factors(pair, q.right_points, q.left_points)
        real_rom = bsa_reduce(real_q, real_pair, passive_model.n)
        assert np.isrealobj(real_q.WV)
        assert real_pair.metadata["realified"] is True
        assert real_rom.field == Field.REAL
        np.testing.assert_allclose(real_rom.hankel_values[:4], complex_rom.hankel_values[:4], rtol=1e-8)
        np.testing.assert_allclose(real_rom.transfer(2j), complex_rom.transfer(2j), rtol=1e-6, atol=1e-9)


    def test_real_factor_product(self, caplog):
        """Test that a conjugate-consistent factor realifies silently."""
        points = [2.0 + 1j, 2.0 - 1j]
        a = np.array([1.0 + 2.0j, -0.5 + 0.25j])
        Z = np.vstack([a, a.conj()])
        pair = FactorPair(Tv=np.eye(2), Lp=Z, Tw=np.eye(2), Lq=Z)
        with caplog.at_level("WARNING", logger="src.reduction.realify"):
            real_pair = realify_factors(pair, points, points)
        assert not caplog.records
        assert np.isrealobj(real_pair.Lp)
        J = np.array([[1.0, -1.0j], [1.0, 1.0j]]) / np.sqrt(2.0)
        Y = J.conj().T @ Z
        np.testing.assert_allclose(real_pair.Lp @ real_pair.Lp.T, Y @ Y.conj().T, atol=1e-12)

    def test_real_factor_residue_warns(self, caplog):
        """Test that a factor whose product keeps an imaginary part is reported."""
        points = [2.0 + 1j, 2.0 - 1j]
        Z = np.array([[1.0 + 1.0j], [2.0 + 0.0j]])
        pair = FactorPair(Tv=np.eye(2), Lp=Z, Tw=np.eye(2), Lq=Z.conj())
        with caplog.at_level("WARNING", logger="src.reduction.realify"):
            realify_factors(pair, points, points)
        messages = [r.getMessage() for r in caplog.records]
        assert any(m.startswith("Right factor product is not real") for m in messages)
        assert any(m.startswith("Left factor product is not real") for m in messages)


class TestError:
    """Tests for H-infinity estimates."""

    def test_first_order_norm(self, first_order):
        """Test ||1 / (s + 1)||_inf = 1 at omega = 0."""
        est = hinf_norm(first_order)
        assert est.value == pytest.approx(1.0)
        assert est.frequency == 0.0
        assert float(est) == est.value

    def test_resonance_is_refined(self):
        """Test that golden-section refinement finds a resonant peak between grid points."""
        a, w0 = 0.01, 3.0
        model = StateSpace(A=[[-a, w0], [-w0, -a]], B=[[1.0], [0.0]], C=[[1.0, 0.0]], D=[[0.0]])
        coarse = np.linspace(0.0, 10.0, 38)
        est = hinf_norm(model, coarse)
        exact = hinf_norm(model, np.linspace(2.9, 3.1, 20001), refine_iterations=0)
        assert est.value == pytest.approx(exact.value, rel=1e-3)

    def test_self_error_is_zero(self, passive_model):
        """Test that a model has no error against itself."""
        assert relative_hinf_error(passive_model, passive_model) == 0.0

    def test_empty_grid(self, first_order):
        """Test that an empty grid raises EmptyGrid."""
        with pytest.raises(EmptyGrid):
            peak(lambda w: 1.0, [])
        with pytest.raises(EmptyGrid):
            hinf_norm(first_order, [])

    def test_zero_model(self):
        """Test that the relative error of a zero model is undefined."""
        zero = scalar_model(0.0, 0.0, 0.0)
        with pytest.raises(ReductionError):
            relative_hinf_error(zero, zero)

    def test_grids(self):
        """Test the default and point-based grids."""
        grid = default_grid(10)
        assert grid[0] == 0.0 and grid.size == 11
        band = grid_for_points([1j, -1j, 100j])
        assert band[1] == pytest.approx(1e-2)
        assert band[-1] == pytest.approx(1e4)

    def test_hsv_difference(self):
        """Test the relative difference of Hankel value sequences."""
        assert hsv_relative_difference([3.0, 4.0], [3.0, 4.0, 1.0]) == 0.0
        assert hsv_relative_difference([3.0, 4.0], [0.0, 0.0]) == pytest.approx(1.0)
        assert hsv_relative_difference([1.0, 1.0], [1.0, 0.0], k=1) == 0.0
        with pytest.raises(ReductionError):
            hsv_relative_difference([0.0], [1.0])


class TestIntrusive:
    """Tests for model-based Gramians and reduction."""

    def test_first_order_gramians(self, first_order):
        """Test P = Q = 1/2 for 1 / (s + 1)."""
        pair = intrusive_gramians(first_order, "bt")
        np.testing.assert_allclose(pair.P, [[0.5]])
        np.testing.assert_allclose(pair.Q, [[0.5]])
        np.testing.assert_allclose(pair.hankel_values(), [0.5])

    def test_lyapunov_residuals(self, passive_model):
        """Test that the BT Gramians solve their Lyapunov equations."""
        g = intrusive_gramians(passive_model, "bt")
        A, B, C = passive_model.A, passive_model.B, passive_model.C
        np.testing.assert_allclose(A @ g.P + g.P @ A.T + B @ B.T, 0.0, atol=1e-12)
        np.testing.assert_allclose(A.T @ g.Q + g.Q @ A + C.T @ C, 0.0, atol=1e-12)
        assert np.isrealobj(g.P)

    def test_hinf_needs_gamma(self, passive_model):
        """Test that the H-infinity Gramians need gamma > 1."""
        with pytest.raises(GammaOutOfRange):
            intrusive_gramians(passive_model, "hinf")

    @pytest.mark.parametrize("variant", [v.value for v in Variant])
    def test_full_order_reproduces(self, passive_model, variant):
        """Test that every variant's full-order reduction is a similarity."""
        config = VariantConfig(variant=variant, gamma=2.0 if variant == "hinf" else None)
        rom = intrusive_reduce(passive_model, config, passive_model.n)
        assert rom.field == Field.REAL
        assert rom.metadata["pipeline"] == "intrusive"
        for s in (0.5j, 3.0, 20j):
            np.testing.assert_allclose(rom.transfer(s), passive_model.transfer(s), rtol=1e-6, atol=1e-9)

    def test_bt_error_bound(self, passive_model):
        """Test the twice-the-tail bound of balanced truncation."""
        rom = intrusive_reduce(passive_model, VariantConfig(), 2)
        assert rom.is_stable()
        norm = hinf_norm(passive_model).value
        error = relative_hinf_error(passive_model, rom) * norm
        assert error <= 2.0 * np.sum(rom.hankel_values[2:]) * (1.0 + 1e-6)

    def test_pr_keeps_passivity(self, passive_model):
        """Test that positive-real truncation returns a positive-real model."""
        rom = intrusive_reduce(passive_model, VariantConfig(variant="pr"), 2)
        assert is_positive_real(rom)

    def test_br_keeps_contractivity(self, passive_model):
        """Test that bounded-real truncation returns a contractive model."""
        rom = intrusive_reduce(passive_model, VariantConfig(variant="br"), 2)
        assert is_bounded_real(rom)

    def test_factors_metadata(self, passive_model):
        """Test the intrusive factor pair."""
        pair, gramians = intrusive_factors(passive_model, VariantConfig(variant="lqg"))
        assert pair.metadata["route"] == "intrusive"
        np.testing.assert_allclose(pair.Lp @ pair.Lp.conj().T, gramians.P, atol=1e-12)


class TestQuadBT:
    """Tests for quadrature-based balanced truncation."""

    def test_linear_weights(self):
        """Test the trapezoid weights of two nodes."""
        np.testing.assert_allclose(trapezoid_weights([1.0, 3.0], "linear") ** 2 * 2 * np.pi, [1.0, 1.0])

    def test_exponential_weights(self):
        """Test the log-spaced rule on one decade."""
        w2 = trapezoid_weights([1.0, 10.0], "exponential") ** 2 * 2 * np.pi
        np.testing.assert_allclose(w2, 0.5 * np.log(10.0) * np.array([1.0, 10.0]))

    @pytest.mark.parametrize("freqs", [[1.0], [2.0, 1.0], [1.0, 1.0]])
    def test_too_few_nodes(self, freqs):
        """Test that rules need two increasing frequencies."""
        with pytest.raises(TooFewNodes):
            trapezoid_weights(freqs, "linear")

    def test_exponential_needs_positive(self):
        """Test that the log rule refuses omega = 0."""
        with pytest.raises(TooFewNodes):
            trapezoid_weights([0.0, 1.0], "exponential")

    def test_conjugates_share_weights(self):
        """Test that each pair gets the weight of its frequency."""
        weights = quadbt_weights(conjugate_points([1.0, 3.0, 9.0]), "linear")
        np.testing.assert_array_equal(weights[0::2], weights[1::2])
        np.testing.assert_allclose(weights[0::2], trapezoid_weights([1.0, 3.0, 9.0], "linear"))

    def test_weight_count(self, example_samples):
        """Test that one weight per point is required."""
        q = assemble(example_samples)
        with pytest.raises(WeightCountMismatch):
            quadbt_factors(q, np.ones(5), np.ones(6))

    def test_positive_weights(self, example_samples):
        """Test that zero weights are refused."""
        q = assemble(example_samples)
        with pytest.raises(ReductionError):
            quadbt_factors(q, np.zeros(6), np.ones(6))

    def test_example_reduction(self, example, example_samples):
        """Test a real order-3 QuadBT model of the illustration problem."""
        q = assemble(example_samples)
        weights = (quadbt_weights(q.right_points), quadbt_weights(q.left_points))
        rom = quadbt_reduce(q, weights, example.order)
        assert rom.order == 3
        assert rom.field == Field.REAL
        assert rom.metadata["pipeline"] == "quadbt"


class TestDiagnostics:
    """Tests for structure checks."""

    def test_positive_real(self):
        """Test 1 / (s + 1) + 1/2."""
        assert is_positive_real(scalar_model(1.0, 1.0, 0.5))

    def test_not_positive_real(self):
        """Test a negative feedthrough."""
        assert not is_positive_real(scalar_model(1.0, 1.0, -1.0))

    def test_passive_model(self, passive_model):
        """Test the synthesized passive model."""
        assert is_positive_real(passive_model)
        assert is_bounded_real(passive_model)
        assert is_minimum_phase(passive_model)

    def test_bounded_real(self):
        """Test gains one half and two."""
        assert is_bounded_real(scalar_model(0.5, 1.0, 0.0))
        assert not is_bounded_real(scalar_model(2.0, 1.0, 0.0))

    def test_minimum_phase(self):
        """Test a zero at -3 and one at +3."""
        assert is_minimum_phase(scalar_model(1.0, 1.0, 0.5))
        assert not is_minimum_phase(scalar_model(1.0, -2.0, 0.5))

    def test_minimum_phase_needs_invertible_d(self, first_order):
        """Test that a strictly proper model has no zeros to check."""
        with pytest.raises(AssumptionViolated):
            is_minimum_phase(first_order)


class TestReducedModel:
    """Tests for ReducedModel class."""

    def test_file_roundtrip_complex(self):
        """Test that a complex model survives a file."""
        rom = ReducedModel(
            A=[[-1.0 + 2.0j]],
            B=[[1.0]],
            C=[[0.5j]],
            D=[[0.0]],
            hankel_values=[0.3, 0.1],
            metadata={"variant": "bt"},
        )
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "rom.json")
            write_rom(rom, path, extra={"run_config": {"order": 1}})
            loaded = read_rom(path)
        assert loaded.field == Field.COMPLEX
        np.testing.assert_array_equal(loaded.A, rom.A)
        np.testing.assert_array_equal(loaded.hankel_values, [0.3, 0.1])
        assert loaded.metadata["variant"] == "bt"
        assert loaded.metadata["run_config"] == {"order": 1}

    def test_missing_field(self):
        """Test that a ROM without C is rejected."""
        with pytest.raises(ParseError) as exc_info:
            ReducedModel.from_dict({"n": 1, "m": 1, "p": 1, "A": [[-1.0]], "B": [[1.0]], "D": [[0.0]]})
        assert exc_info.value.details["field"] == "C"

    def test_frequency_response(self, passive_model):
        """Test the Schur-based sweep against pointwise evaluation."""
        rom = ReducedModel(A=passive_model.A, B=passive_model.B, C=passive_model.C, D=passive_model.D, field=Field.REAL)
        response = rom.frequency_response([0.0, 1.0, 10.0])
        assert response.shape == (3, 1, 1)
        np.testing.assert_allclose(response[1], rom.transfer(1j), rtol=1e-10)

    def test_to_statespace(self):
        """Test that only real models convert."""
        real = ReducedModel(A=[[-1.0]], B=[[1.0]], C=[[1.0]], D=[[0.0]], field=Field.REAL)
        assert real.to_statespace().n == 1
        with pytest.raises(AssumptionViolated):
            ReducedModel(A=[[-1.0]], B=[[1.0]], C=[[1.0]], D=[[0.0]]).to_statespace()

    def test_zeros_and_poles(self):
        """Test the zero of 1 / (s + 1) + 1/2."""
        rom = ReducedModel(A=[[-1.0]], B=[[1.0]], C=[[1.0]], D=[[0.5]], field=Field.REAL)
        np.testing.assert_allclose(rom.zeros(), [-3.0])
        np.testing.assert_allclose(rom.poles(), [-1.0])
        assert rom.is_stable()
