"""
Tests for the reduction pipeline and the pipeline comparison.
"""

import numpy as np
import pytest

from src.core.base_variant import Mode, VariantConfig
from src.core.config import AppConfig, HinfSettings
from src.reduction.bsa import select_order
from src.reduction.compare import ComparisonRow, compare_variants, quadbt_applicable
from src.reduction.diagnostics import is_bounded_real, is_minimum_phase, is_positive_real
from src.reduction.error import hsv_relative_difference
from src.reduction.intrusive import intrusive_factors
from src.reduction.model import Field
from src.reduction.pipeline import infer_mode, prepare_reduction, reduce_samples, resolve_epsilon
from src.sampling.models import EXAMPLE_ERRORS, synth_model
from src.sampling.samples import generate_samples, mirror_points
from tests.helpers import lightly_damped_model


@pytest.fixture
def fast_app():
    """Configuration with a coarse H-infinity sweep."""
    return AppConfig(hinf=HinfSettings(grid_points=120, refine_iterations=30))


class TestReduceSamples:
    """Tests for reduce_samples."""

    def test_real_model(self, adi_samples):
        """Test that conjugate-closed data give a real model."""
        result = reduce_samples(adi_samples, VariantConfig(order=2))
        assert result.rom.order == 2
        assert result.rom.field == Field.REAL
        assert result.metadata["realified"] is True
        assert result.epsilon_plan is None
        assert np.isrealobj(result.rom.to_statespace().A)

    def test_metadata(self, adi_samples):
        """Test the run information carried by the model."""
        result = reduce_samples(adi_samples, VariantConfig(variant="lqg", order=3, fast_path=True))
        meta = result.rom.metadata
        assert meta["pipeline"] == "sampled"
        assert meta["variant"] == "lqg"
        assert meta["mode"] == "adi"
        assert meta["fast_path"] is True
        assert meta["route"] == "fast"
        run = result.run_config()
        assert run["variant"] == "lqg" and run["order"] == 3
        assert run["realified"] is True

    def test_without_realification(self, adi_samples):
        """Test that the complex path stays complex."""
        result = reduce_samples(adi_samples, VariantConfig(order=2), realify_data=False)
        assert result.rom.field == Field.COMPLEX
        assert result.metadata["realified"] is False

    def test_realification_keeps_values(self, adi_samples):
        """Test that real and complex paths share their leading Hankel values."""
        real = reduce_samples(adi_samples, VariantConfig(order=3))
        cplx = reduce_samples(adi_samples, VariantConfig(order=3), realify_data=False)
        np.testing.assert_allclose(real.hankel_values[:3], cplx.hankel_values[:3], rtol=1e-8)
        np.testing.assert_allclose(real.rom.transfer(1j), cplx.rom.transfer(1j), rtol=1e-6, atol=1e-9)

    def test_energy_threshold(self, adi_samples):
        """Test a fractional order."""
        result = reduce_samples(adi_samples, VariantConfig(order=0.01))
        assert result.rom.order == select_order(result.hankel_values, 0.01)

    def test_auto_epsilon(self, axis_samples):
        """Test an imaginary-axis run with epsilon chosen from the frequencies."""
        config = VariantConfig(mode="ddp", fast_path=True, order=3)
        result = reduce_samples(axis_samples, config, eps_context="gramian")
        plan = result.epsilon_plan
        assert plan is not None
        assert result.config.eps == plan.epsilon
        assert result.rom.metadata["epsilon"] == plan.epsilon
        assert result.run_config()["epsilon_plan"]["context"] == "gramian"

    def test_prepared_reused(self, adi_samples):
        """Test several orders from one preparation."""
        prepared = prepare_reduction(adi_samples, VariantConfig(variant="sw"))
        values = prepared.hankel_values()
        for r in (1, 2, 3):
            rom = prepared.reduce(r)
            assert rom.order == r
            np.testing.assert_allclose(rom.hankel_values, values)


class TestResolveEpsilon:
    """Tests for resolve_epsilon and infer_mode."""

    def test_adi_ignores_context(self, adi_samples):
        """Test that ADI runs keep their configuration."""
        config = VariantConfig()
        resolved, plan = resolve_epsilon(adi_samples, config, "gramian")
        assert resolved is config
        assert plan is None

    def test_ddp_uses_app_settings(self, axis_samples):
        """Test the safety factor from the application configuration."""
        app = AppConfig()
        app.epsilon.safety_factor = 0.5
        resolved, plan = resolve_epsilon(axis_samples, VariantConfig(mode="ddp"), "xp_dom", app)
        assert plan.safety_factor == 0.5
        assert resolved.eps == pytest.approx(0.5 * min(plan.bounds.values()))

    def test_infer_mode(self, adi_samples, axis_samples):
        """Test mode inference from the points."""
        assert infer_mode(adi_samples) == Mode.ADI
        assert infer_mode(axis_samples) == Mode.DDP


class TestCompare:
    """Tests for compare_variants."""

    def test_quadbt_applicability(self, adi_samples, axis_samples):
        """Test that QuadBT runs only for BT on the imaginary axis."""
        assert quadbt_applicable(axis_samples, "bt", Mode.DDP)
        assert not quadbt_applicable(axis_samples, "lqg", Mode.DDP)
        assert not quadbt_applicable(adi_samples, "bt", Mode.ADI)

    def test_full_order_rows(self, passive_model, axis_samples, fast_app):
        """Test that every pipeline is exact at the model order."""
        base = VariantConfig(mode="ddp", eps=0.05, fast_path=True)
        rows = compare_variants(passive_model, axis_samples, ["bt", "lqg"], [2, 4], base, app=fast_app)
        assert [(r.variant, r.order) for r in rows] == [("bt", 2), ("bt", 4), ("lqg", 2), ("lqg", 4)]
        full = [r for r in rows if r.order == 4]
        for row in full:
            assert row.intrusive_error < 1e-6
            assert row.sampled_error < 1e-6
        assert rows[1].quadbt_error < 1e-6
        assert rows[3].quadbt_error is None

    def test_adi_rows(self, passive_model, adi_samples, fast_app):
        """Test an ADI comparison row."""
        rows = compare_variants(passive_model, adi_samples, ["bt"], [2], VariantConfig(), app=fast_app)
        (row,) = rows
        assert isinstance(row, ComparisonRow)
        assert row.quadbt_error is None
        assert row.intrusive_error > 0.0
        assert row.hsv_difference >= 0.0
        assert set(row.to_dict()) == {
            "variant",
            "order",
            "intrusive_error",
            "sampled_error",
            "quadbt_error",
            "hsv_difference",
        }


class TestMirroredShifts:
    """ADI runs with one shift per mirrored pole reproduce the intrusive methods."""

    @pytest.mark.parametrize("seed", range(10))
    def test_structure_preserved(self, seed):
        """Test the passivity, contractivity and minimum-phase guarantees."""
        model = synth_model(6, seed=seed, passive=True)
        points = mirror_points(model)
        samples = generate_samples(model, points, points)
        pr = reduce_samples(samples, VariantConfig(variant="pr", order=2)).rom
        assert is_positive_real(pr)
        br = reduce_samples(samples, VariantConfig(variant="br", order=2)).rom
        assert is_bounded_real(br, np.logspace(-3, 3, 400))
        sw = reduce_samples(samples, VariantConfig(variant="sw", order=2)).rom
        assert sw.is_stable()
        assert is_minimum_phase(sw)

    @pytest.mark.parametrize("seed", range(20))
    def test_hankel_values_match_intrusive(self, seed):
        """Test the top 8 Hankel values of a 30th-order two-port against intrusive BT."""
        model = lightly_damped_model(30, m=2, p=2, seed=seed)
        points = mirror_points(model)
        samples = generate_samples(model, points, points)
        sampled = prepare_reduction(samples, VariantConfig()).hankel_values()
        _, gramians = intrusive_factors(model, VariantConfig())
        assert hsv_relative_difference(gramians.hankel_values(), sampled, 8) <= 1e-4


@pytest.mark.slow
class TestDeskExperiment:
    """Intrusive and sampled error curves of a 100th-order passive model."""

    def test_error_curves_agree(self, fast_app):
        """Test orders 1 to 20 wherever the intrusive error is below 0.1."""
        model = lightly_damped_model(100, seed=11, passive=True, damping=(0.005, 0.02), roll_off=1.0)
        points = mirror_points(model)
        assert points.size == 100
        samples = generate_samples(model, points, points)
        rows = compare_variants(
            model, samples, ["bt", "lqg", "pr", "bst"], range(1, 21), VariantConfig(), app=fast_app
        )
        checked = [r for r in rows if r.intrusive_error < 1e-1]
        assert checked
        for row in checked:
            assert abs(row.sampled_error - row.intrusive_error) <= 0.1 * row.intrusive_error


@pytest.mark.slow
class TestPrintedExample:
    """Reproduction of the order-3 reference errors of the illustration problem."""

    @pytest.mark.parametrize("variant", sorted(EXAMPLE_ERRORS))
    def test_reference_errors(self, example, example_samples, variant):
        """Test intrusive and sampled errors against the reference table."""
        base = VariantConfig(
            mode="ddp",
            gamma=example.gamma,
            zeta_right=example.zeta_right,
            zeta_left=example.zeta_left,
        )
        (row,) = compare_variants(example.model, example_samples, [variant], [example.order], base)
        intrusive, sampled = example.errors[variant]
        assert row.intrusive_error == pytest.approx(intrusive, abs=5e-4)
        assert row.sampled_error == pytest.approx(sampled, abs=5e-4)
