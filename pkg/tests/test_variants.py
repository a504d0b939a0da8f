"""
Tests for the variant registry, configuration and factor computations.
"""

import numpy as np
import pytest

from src.core.base_variant import (
    FactorPair,
    Mode,
    Variant,
    VariantConfig,
    feedthrough_terms,
)
from src.core.exceptions import (
    AssumptionViolated,
    ConfigError,
    FeedthroughNotBR,
    FeedthroughNotPR,
    FeedthroughSingular,
    GammaOutOfRange,
    ModePointMismatch,
    NotSquare,
    OrderOutOfRange,
)
from src.core.linalg import spectrum
from src.reduction.bsa import bsa_reduce
from src.sampling.loewner import assemble
from src.sampling.samples import conjugate_points, generate_samples, mirror_points
from src.variants.bst import BSTVariant
from src.variants.bt import BTVariant
from src.variants.lqg import LQGVariant
from src.variants.registry import VARIANTS, available_variants, compute_factors, get_variant
from tests.helpers import assert_same_eigenvalues

CHECK_POINTS = [2j, 0.7, 15.0 - 4j]


def full_order_rom(samples, config, order):
    """Factors of a variant truncated at the model order."""
    q = assemble(samples)
    pair = compute_factors(q, config)
    return pair, bsa_reduce(q, pair, order)


def assert_reproduces(model, rom):
    for s in CHECK_POINTS:
        np.testing.assert_allclose(rom.transfer(s), model.transfer(s), rtol=1e-5, atol=1e-8)


class TestRegistry:
    """Tests for the variant registry."""

    def test_available(self):
        """Test that all seven variants are registered."""
        assert available_variants() == ["bt", "lqg", "hinf", "pr", "br", "sw", "bst"]
        assert len(VARIANTS) == 7

    def test_get_variant(self):
        """Test lookup by name."""
        assert get_variant("bt") is BTVariant
        assert get_variant(Variant.BST) is BSTVariant

    def test_unknown_variant(self):
        """Test that an unknown name raises ConfigError."""
        with pytest.raises(ConfigError) as exc_info:
            get_variant("nope")
        assert "bt" in exc_info.value.details["available"]

    def test_config_for_other_variant(self, adi_samples):
        """Test that a class refuses a configuration of another variant."""
        with pytest.raises(ConfigError):
            BTVariant(assemble(adi_samples), VariantConfig(variant="lqg"))


class TestVariantConfig:
    """Tests for VariantConfig validation."""

    def test_defaults(self):
        """Test the default configuration."""
        config = VariantConfig()
        assert config.variant == Variant.BT
        assert config.mode == Mode.ADI
        assert config.kappa == 1.0
        assert not config.uses_direct_route

    def test_hinf_needs_gamma(self):
        """Test that HINF requires gamma > 1."""
        with pytest.raises(GammaOutOfRange):
            VariantConfig(variant="hinf")
        with pytest.raises(GammaOutOfRange):
            VariantConfig(variant="hinf", gamma=1.0)

    def test_hinf_kappa(self):
        """Test kappa = 1 - gamma^-2."""
        assert VariantConfig(variant="hinf", gamma=2.0).kappa == pytest.approx(0.75)

    @pytest.mark.parametrize("order", [0, -3, 1.5, 0.0])
    def test_bad_order(self, order):
        """Test that orders below one and thresholds outside (0, 1) are refused."""
        with pytest.raises(OrderOutOfRange):
            VariantConfig(order=order)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"eps": 0.0},
            {"eps": -0.1},
            {"zeta_rule": "random"},
            {"variant": "unknown"},
            {"mode": "sideways"},
            {"mode": "adi", "zeta_right": np.ones((2, 1))},
        ],
    )
    def test_invalid(self, kwargs):
        """Test configurations that raise ConfigError."""
        with pytest.raises(ConfigError):
            VariantConfig(**kwargs)

    def test_supplied_zeta_uses_direct_route(self):
        """Test that supplied free parameters force the direct route."""
        config = VariantConfig(mode="ddp", eps=0.1, zeta_right=np.ones((2, 1)))
        assert config.uses_direct_route
        assert "zeta_right" in config.to_dict()


class TestFeedthroughTerms:
    """Tests for feedthrough_terms."""

    def test_pr_weight(self):
        """Test R = D + D^T."""
        terms = feedthrough_terms("pr", [[0.25]])
        np.testing.assert_allclose(terms.R, [[0.5]])

    def test_br_weights(self):
        """Test the bounded-real weights of a scalar feedthrough."""
        terms = feedthrough_terms("br", [[0.5]])
        np.testing.assert_allclose(terms.Rp, [[0.75]])
        np.testing.assert_allclose(terms.Rb, [[1.0 + 0.25 / 0.75]])

    def test_not_square(self):
        """Test that PR and SW need m == p."""
        for variant in ("pr", "sw"):
            with pytest.raises(NotSquare):
                feedthrough_terms(variant, np.ones((1, 2)))

    def test_not_pr(self):
        """Test that D + D^T must be positive definite."""
        with pytest.raises(FeedthroughNotPR):
            feedthrough_terms("pr", [[-1.0]])

    def test_not_br(self):
        """Test that ||D|| must be below one."""
        with pytest.raises(FeedthroughNotBR):
            feedthrough_terms("br", [[1.5]])

    @pytest.mark.parametrize("variant", ["sw", "bst"])
    def test_singular(self, variant):
        """Test that D D^T must be invertible."""
        with pytest.raises(FeedthroughSingular):
            feedthrough_terms(variant, [[0.0]])

    def test_bst_wide_feedthrough(self):
        """Test that BST accepts a full-row-rank non-square D."""
        terms = feedthrough_terms("bst", [[1.0, 0.0]])
        np.testing.assert_allclose(terms.Rs, [[1.0]])

    def test_bt_has_no_weights(self):
        """Test that BT needs nothing of D."""
        terms = feedthrough_terms("bt", [[-5.0]])
        assert terms.R is None and terms.Rs is None


class TestModeChecks:
    """Tests for the point/mode consistency check."""

    def test_adi_on_axis(self, axis_samples):
        """Test that ADI mode refuses imaginary-axis points."""
        with pytest.raises(ModePointMismatch):
            compute_factors(assemble(axis_samples), VariantConfig(mode="adi"))

    def test_ddp_off_axis(self, adi_samples):
        """Test that DDP mode refuses right-half-plane points."""
        with pytest.raises(ModePointMismatch):
            compute_factors(assemble(adi_samples), VariantConfig(mode="ddp", eps=0.1))

    @pytest.mark.parametrize("fast", [True, False])
    def test_ddp_needs_eps(self, axis_samples, fast):
        """Test that imaginary-axis runs without epsilon raise ConfigError."""
        with pytest.raises(ConfigError):
            compute_factors(assemble(axis_samples), VariantConfig(mode="ddp", fast_path=fast))


class TestFactors:
    """Tests for factor shapes and metadata."""

    def test_shapes(self, adi_samples):
        """Test that every factor is square in the sampled dimension."""
        pair = compute_factors(assemble(adi_samples), VariantConfig(variant="lqg"))
        assert isinstance(pair, FactorPair)
        assert pair.Tv.shape == (12, 12) and pair.Lp.shape[0] == 12
        assert pair.Tw.shape == (12, 12) and pair.Lq.shape[0] == 12
        assert np.all(np.isfinite(pair.right_factor))
        assert pair.metadata["route"] == "exact"

    def test_bt_fast_adi_factor(self, adi_samples):
        """Test L_p = sqrt(2 Re sigma) I on the fast path."""
        pair = compute_factors(assemble(adi_samples), VariantConfig(fast_path=True))
        np.testing.assert_allclose(pair.Lp, np.eye(12), atol=1e-15)
        assert pair.metadata["route"] == "fast"

    def test_bt_fast_ddp_factor(self, axis_samples):
        """Test L_p = sqrt(eps / 2) I on the axis fast path."""
        pair = compute_factors(assemble(axis_samples), VariantConfig(mode="ddp", eps=0.08, fast_path=True))
        np.testing.assert_allclose(pair.Lp, 0.2 * np.eye(12))

    def test_pole_placed_metadata(self, axis_samples):
        """Test that imaginary-axis runs report pole-placed free parameters."""
        pair = compute_factors(assemble(axis_samples), VariantConfig(mode="ddp", eps=0.05))
        assert pair.metadata["right_zeta_mode"] == "pole_placed"
        assert pair.metadata["left_zeta_mode"] == "pole_placed"
        assert pair.metadata["eps"] == 0.05

    def test_coupled_fast_transform_is_block_diagonal(self, axis_samples):
        """Test that the coupled fast path gives block-diagonal transforms."""
        pair = compute_factors(assemble(axis_samples), VariantConfig(variant="sw", mode="ddp", eps=0.05, fast_path=True))
        off = pair.Tw - np.diag(np.diag(pair.Tw))
        np.testing.assert_allclose(off, 0.0)

    def test_bst_needs_matching_counts(self, passive_model):
        """Test that the stochastic fast path needs v == w."""
        samples = generate_samples(
            passive_model,
            conjugate_points([1.0, 3.0], 0.5),
            conjugate_points([2.0], 0.5),
        )
        with pytest.raises(AssumptionViolated):
            compute_factors(assemble(samples), VariantConfig(variant="bst", fast_path=True))

    def test_fast_matches_exact_near_axis(self, passive_model):
        """Test that the fast BT values approach the exact ones for small offsets."""
        samples = generate_samples(
            passive_model,
            conjugate_points([0.3, 1.0, 3.0, 10.0], 1e-4),
            conjugate_points([0.4, 1.5, 4.0, 12.0], 1e-4),
        )
        q = assemble(samples)
        exact = bsa_reduce(q, compute_factors(q, VariantConfig()), 2)
        fast = bsa_reduce(q, compute_factors(q, VariantConfig(fast_path=True)), 2)
        np.testing.assert_allclose(fast.hankel_values[:2], exact.hankel_values[:2], rtol=1e-2)


class TestExactRecovery:
    """Truncating at the model order must reproduce the model."""

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"variant": "bt"},
            {"variant": "bt", "fast_path": True},
            {"variant": "lqg"},
            {"variant": "lqg", "fast_path": True},
            {"variant": "hinf", "gamma": 2.0},
            {"variant": "sw"},
            {"variant": "pr"},
            {"variant": "br"},
            {"variant": "bst"},
            {"variant": "pr", "fast_path": True},
            {"variant": "br", "fast_path": True},
        ],
    )
    def test_adi(self, passive_model, adi_samples, kwargs):
        """Test right-half-plane samples."""
        _, rom = full_order_rom(adi_samples, VariantConfig(mode="adi", **kwargs), passive_model.n)
        assert rom.order == passive_model.n
        assert_reproduces(passive_model, rom)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"variant": "bt"},
            {"variant": "bt", "fast_path": True},
            {"variant": "lqg"},
            {"variant": "lqg", "fast_path": True},
            {"variant": "hinf", "gamma": 2.0},
            {"variant": "hinf", "gamma": 2.0, "fast_path": True},
            {"variant": "pr"},
            {"variant": "br"},
            {"variant": "sw"},
            {"variant": "bst"},
        ],
    )
    def test_ddp(self, passive_model, axis_samples, kwargs):
        """Test imaginary-axis samples with pole-placed interpolants."""
        _, rom = full_order_rom(axis_samples, VariantConfig(mode="ddp", eps=0.05, **kwargs), passive_model.n)
        assert_reproduces(passive_model, rom)

    @pytest.mark.parametrize("variant", ["bt", "lqg", "pr", "br", "sw", "bst"])
    def test_adi_mirrored_poles(self, passive_model, variant):
        """Test the exact ADI route with one shift per mirrored model pole."""
        points = mirror_points(passive_model)
        samples = generate_samples(passive_model, points, points)
        _, rom = full_order_rom(samples, VariantConfig(variant=variant), passive_model.n)
        assert rom.order == passive_model.n
        assert_reproduces(passive_model, rom)

    def test_supplied_zeta(self, passive_model, axis_samples):
        """Test a supplied free parameter on the direct route."""
        config = VariantConfig(mode="ddp", eps=0.05, zeta_right=0.05 * np.ones((12, 1)))
        pair, rom = full_order_rom(axis_samples, config, passive_model.n)
        assert pair.metadata["route"] == "direct"
        assert pair.metadata["right_zeta_mode"] == "supplied"
        assert pair.metadata["left_zeta_mode"] == "supplied"
        assert_reproduces(passive_model, rom)

    def test_mimo(self, mimo_model):
        """Test a two-input two-output model."""
        samples = generate_samples(
            mimo_model,
            conjugate_points([0.3, 1.0, 3.0, 10.0, 30.0], 0.5),
            conjugate_points([0.5, 2.0, 5.0, 15.0, 50.0], 0.5),
        )
        _, rom = full_order_rom(samples, VariantConfig(variant="lqg"), mimo_model.n)
        assert_reproduces(mimo_model, rom)


def right_gramian(samples, **kwargs):
    """Right Gramian of a DDP run; BT when no variant is given."""
    config = VariantConfig(mode="ddp", **kwargs)
    variant = (LQGVariant if config.variant == Variant.LQG else BTVariant)(assemble(samples), config)
    variant.compute()
    return variant.right_gramian


def successive_ratios(errors):
    return [a / b for a, b in zip(errors, errors[1:])]


class TestConvergenceOrder:
    """The closed-form Gramians approach the exact ones as epsilon shrinks."""

    def test_bt_gramian(self, axis_samples):
        """Test that ||P_hat - eps/2 I|| falls like eps^3."""
        errors = []
        for eps in (1e-2, 5e-3, 2.5e-3, 1.25e-3):
            P = right_gramian(axis_samples, eps=eps)
            errors.append(np.linalg.norm(P - 0.5 * eps * np.eye(P.shape[0]), np.inf))
        for ratio in successive_ratios(errors):
            assert 6.0 <= ratio <= 10.0

    def test_lqg_gramian(self, first_order):
        """Test that the block-diagonal LQG Gramian is second-order accurate."""
        samples = generate_samples(first_order, conjugate_points([0.5, 2.0]), conjugate_points([1.0, 3.0]))
        errors = []
        for eps in (1e-3, 5e-4, 2.5e-4, 1.25e-4):
            exact = right_gramian(samples, variant="lqg", eps=eps)
            fast = right_gramian(samples, variant="lqg", eps=eps, fast_path=True)
            errors.append(np.linalg.norm(exact - fast, np.inf))
        for ratio in successive_ratios(errors):
            assert 3.0 <= ratio <= 5.0


class TestProjectedRiccati:
    """The ADI LQG Gramian of the interpolant."""

    def test_inverse_solves_riccati(self, passive_model):
        """Test that Q_v^{-1} solves the Riccati equation of the I-PORK interpolant."""
        samples = generate_samples(
            passive_model,
            conjugate_points([1.0, 3.0, 10.0], 0.5),
            conjugate_points([2.0], 0.5),
        )
        variant = LQGVariant(assemble(samples), VariantConfig(variant="lqg"))
        variant.compute()
        P = variant.right_gramian
        sv = variant.right_shift
        CV = variant.loewner.CV
        zeta = P @ sv.L.T
        A_hat = sv.S - zeta @ sv.L
        PC = P @ CV.conj().T
        residual = A_hat @ P + P @ A_hat.conj().T + zeta @ zeta.conj().T - PC @ PC.conj().T
        scale = (
            2 * np.linalg.norm(A_hat) * np.linalg.norm(P)
            + np.linalg.norm(zeta) ** 2
            + np.linalg.norm(PC) ** 2
        )
        assert np.linalg.norm(residual) <= 1e-9 * scale

    def test_closed_loop_poles_are_mirrored_points(self, passive_model):
        """Test spectrum(A_hat - P C* C) = -conj(sigma)."""
        samples = generate_samples(
            passive_model,
            conjugate_points([1.0, 3.0, 10.0], 0.5),
            conjugate_points([2.0], 0.5),
        )
        variant = LQGVariant(assemble(samples), VariantConfig(variant="lqg"))
        variant.compute()
        P = variant.right_gramian
        sv = variant.right_shift
        CV = variant.loewner.CV
        closed = sv.S - P @ (sv.L.T @ sv.L + CV.conj().T @ CV)
        expected = -sv.points.conj()
        atol = 1e-7 * max(1.0, np.max(np.abs(expected)))
        assert_same_eigenvalues(spectrum(closed).eigenvalues, expected, atol=atol)
