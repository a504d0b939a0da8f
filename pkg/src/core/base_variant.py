"""
Base Variant Module
===================

Provides the abstract base class for all balanced-truncation variants.

A variant turns a sample set (through its Loewner quadruple) into a
:class:`FactorPair`: right factors ``(T_v, L_p)`` and left factors
``(T_w, L_q)`` such that ``V T_v L_p`` and ``W T_w L_q`` approximate
square-root factors of the variant's Gramians. The square-root step only
ever sees these factors and the quadruple.

Classes
-------
Variant, Mode, Route
    Enumerations of variants, sampling modes and computation routes.
VariantConfig
    Run configuration of one variant.
FactorPair
    Result of a variant computation.
FeedthroughTerms
    The feedthrough-derived weights ``R`` of the PR, BR, SW and BST variants.
BaseVariant
    Abstract base class for variant implementations.

Example
-------
>>> from src.core.base_variant import BaseVariant, VariantConfig
>>>
>>> class MyVariant(BaseVariant):
...     name = Variant.BT
...
...     def adi_right(self, fast):
...         ...
...     def adi_left(self, fast):
...         ...
...     def ddp_right(self, fast):
...         ...
...     def ddp_left(self, fast):
...         ...
...     def direct_right(self):
...         ...
...     def direct_left(self):
...         ...

Notes
-----
Right and left factors are independent except for BST, whose left side
consumes the right Gramian; :meth:`BaseVariant.run_sides` is the hook
that sequences them.

See Also
--------
BTVariant : Concrete implementation for classical balanced truncation.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, ClassVar, Dict, List, Optional, Tuple, Type, Union

import numpy as np
import scipy.linalg as sla

from src.core.exceptions import (
    ConfigError,
    FeedthroughNotBR,
    FeedthroughNotPR,
    FeedthroughSingular,
    GammaOutOfRange,
    LoewnerBTError,
    ModePointMismatch,
    NotSquare,
    OrderOutOfRange,
    VariantError,
)
from src.core.fileio import encode_complex_matrix
from src.core.linalg import (
    COND_GUARD,
    guarded_solve,
    hermitian_part,
    psd_factor,
    sqrt_psd,
)
from src.core.parallel import TaskRunner
from src.interpolation.pork import FreeParameter, resolve_zeta
from src.interpolation.shift import LEFT, RIGHT, build_shift_system
from src.sampling.loewner import LoewnerQuadruple

# Module logger
logger = logging.getLogger(__name__)

# Points with |Re s| below this (relative) count as imaginary-axis points
AXIS_RTOL = 1e-10
PD_RTOL = 1e-12


class Variant(str, Enum):
    """Balanced-truncation variants."""

    BT = "bt"
    LQG = "lqg"
    HINF = "hinf"
    PR = "pr"
    BR = "br"
    SW = "sw"
    BST = "bst"


class Mode(str, Enum):
    """Sampling mode: right-half-plane ADI shifts or imaginary-axis points."""

    ADI = "adi"
    DDP = "ddp"


class Route(str, Enum):
    """
    Computation route.

    ``AUTO`` uses the transformed projected equations unless a free
    parameter is supplied; ``DIRECT`` always feeds the projected
    realizations to the model-based Gramian equations.
    """

    AUTO = "auto"
    DIRECT = "direct"


# =============================================================================
# Configuration
# =============================================================================


@dataclass
class VariantConfig:
    """
    Run configuration of one variant.

    Attributes
    ----------
    variant : Variant
    mode : Mode
    eps : float, optional
        Shift offset for imaginary-axis points (pole placement and the
        block-diagonal closed forms). ADI runs read it from the points.
    gamma : float, optional
        H-infinity level, required (and > 1) for ``HINF``.
    fast_path : bool
        Use the block-diagonal closed forms instead of solving the
        projected equations.
    order : int or float, optional
        Reduced order ``r``, or an energy threshold in (0, 1).
    route : Route
    zeta_rule : str
        ``"pole"`` (pole placement at ``-eps + j omega``) or ``"modal"``.
    zeta_right, zeta_left : np.ndarray, optional
        Supplied free parameters (imaginary-axis points only).
    cond_guard : float
        Largest tolerated condition number of inverted matrices.
    max_workers : int, optional
        Threads for the concurrent right/left computations.
    """

    variant: Variant = Variant.BT
    mode: Mode = Mode.ADI
    eps: Optional[float] = None
    gamma: Optional[float] = None
    fast_path: bool = False
    order: Optional[Union[int, float]] = None
    route: Route = Route.AUTO
    zeta_rule: str = "pole"
    zeta_right: Optional[np.ndarray] = None
    zeta_left: Optional[np.ndarray] = None
    cond_guard: float = COND_GUARD
    max_workers: Optional[int] = None

    def __post_init__(self) -> None:
        try:
            self.variant = Variant(self.variant)
            self.mode = Mode(self.mode)
            self.route = Route(self.route)
        except ValueError as e:
            raise ConfigError(str(e)) from e
        self.validate()

    def validate(self) -> None:
        """
        Check the configuration.

        Raises
        ------
        GammaOutOfRange
            If ``HINF`` is requested without ``gamma > 1``.
        OrderOutOfRange
            If ``order`` is neither a positive integer nor in (0, 1).
        ConfigError
            For nonpositive ``eps``, unknown ``zeta_rule`` or supplied free
            parameters in ADI mode.
        """
        if self.variant == Variant.HINF and (self.gamma is None or not self.gamma > 1.0):
            raise GammaOutOfRange(
                "H-infinity level must exceed one",
                variant=self.variant.value,
                details={"gamma": self.gamma},
            )
        if self.eps is not None and not self.eps > 0.0:
            raise ConfigError("epsilon must be positive", details={"eps": self.eps})
        if self.zeta_rule not in ("pole", "modal"):
            raise ConfigError("zeta_rule must be 'pole' or 'modal'", details={"zeta_rule": self.zeta_rule})
        if self.order is not None:
            if isinstance(self.order, (int, np.integer)) and not isinstance(self.order, bool):
                if self.order < 1:
                    raise OrderOutOfRange("Order must be at least 1", details={"order": int(self.order)})
            elif not 0.0 < float(self.order) < 1.0:
                raise OrderOutOfRange(
                    "Energy threshold must lie in (0, 1)", details={"order": self.order}
                )
        if self.mode == Mode.ADI and self.has_supplied_zeta:
            raise ConfigError("Supplied free parameters need imaginary-axis points (ddp mode)")

    @property
    def has_supplied_zeta(self) -> bool:
        return self.zeta_right is not None or self.zeta_left is not None

    @property
    def uses_direct_route(self) -> bool:
        return self.route == Route.DIRECT or self.has_supplied_zeta

    @property
    def kappa(self) -> float:
        """Weight of the quadratic LQG terms: 1, or ``1 - gamma^-2`` for HINF."""
        if self.variant == Variant.HINF and self.gamma is not None:
            return 1.0 - 1.0 / self.gamma**2
        return 1.0

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "variant": self.variant.value,
            "mode": self.mode.value,
            "eps": self.eps,
            "gamma": self.gamma,
            "fast_path": self.fast_path,
            "order": self.order,
            "route": self.route.value,
            "zeta_rule": self.zeta_rule,
        }
        if self.zeta_right is not None:
            data["zeta_right"] = encode_complex_matrix(self.zeta_right)
        if self.zeta_left is not None:
            data["zeta_left"] = encode_complex_matrix(self.zeta_left)
        return data


@dataclass
class FactorPair:
    """
    Right and left factors of a variant.

    Attributes
    ----------
    Tv : np.ndarray, shape (v*m, v*m)
        Right transformation (identity for BT, LQG, HINF, SW, BST).
    Lp : np.ndarray, shape (v*m, k)
        Factor of the projected controllability-type Gramian.
    Tw : np.ndarray, shape (w*p, w*p)
        Left transformation (identity for BT, LQG, HINF).
    Lq : np.ndarray, shape (w*p, l)
        Factor of the projected observability-type Gramian.
    """

    Tv: np.ndarray
    Lp: np.ndarray
    Tw: np.ndarray
    Lq: np.ndarray
    variant: Variant = Variant.BT
    mode: Mode = Mode.ADI
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def right_factor(self) -> np.ndarray:
        return self.Tv @ self.Lp

    @property
    def left_factor(self) -> np.ndarray:
        return self.Tw @ self.Lq

    def validate(self) -> None:
        """Raise VariantError on non-finite factors."""
        for name in ("Tv", "Lp", "Tw", "Lq"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise VariantError(
                    f"Factor {name} is not finite", variant=self.variant.value
                )

    def __repr__(self) -> str:
        return (
            f"FactorPair(variant={self.variant.value}, mode={self.mode.value}, "
            f"Lp={self.Lp.shape}, Lq={self.Lq.shape})"
        )


# =============================================================================
# Feedthrough weights
# =============================================================================


@dataclass
class FeedthroughTerms:
    """
    Feedthrough weights of a variant; unused entries are None.

    ``R = D + D^T`` (PR); ``R_p = I - D D^T``, ``R_q = I - D^T D``,
    ``R_b = I + D^T R_p^{-1} D``, ``R_c = I + D R_q^{-1} D^T`` (BR);
    ``R_s = D D^T`` (SW, BST).
    """

    D: np.ndarray
    R: Optional[np.ndarray] = None
    Rp: Optional[np.ndarray] = None
    Rq: Optional[np.ndarray] = None
    Rb: Optional[np.ndarray] = None
    Rc: Optional[np.ndarray] = None
    Rs: Optional[np.ndarray] = None


def _min_eig(M: np.ndarray) -> float:
    return float(np.min(np.linalg.eigvalsh(hermitian_part(M)))) if M.size else 1.0


def _require_pd(M: np.ndarray, name: str, error_cls: Type[VariantError], variant: Variant, hint: str) -> None:
    lam = _min_eig(M)
    if lam <= PD_RTOL * max(1.0, float(np.linalg.norm(M, 2))):
        raise error_cls(
            f"{name} must be positive definite",
            variant=variant.value,
            hint=hint,
            details={"min_eig": lam},
        )


def feedthrough_terms(variant: Union[Variant, str], D: np.ndarray) -> FeedthroughTerms:
    """
    Check a variant's feedthrough assumption and build its weights.

    Raises
    ------
    NotSquare
        PR and SW with ``m != p``.
    FeedthroughNotPR
        ``D + D^T`` not positive definite.
    FeedthroughNotBR
        ``I - D D^T`` or ``I - D^T D`` not positive definite.
    FeedthroughSingular
        ``D D^T`` singular (SW, BST).
    """
    variant = Variant(variant)
    D = np.atleast_2d(np.asarray(D))
    p, m = D.shape
    terms = FeedthroughTerms(D=D)
    if variant in (Variant.PR, Variant.SW) and m != p:
        raise NotSquare(
            "Variant needs a square transfer function",
            variant=variant.value,
            details={"m": m, "p": p},
        )
    if variant == Variant.PR:
        terms.R = D + D.conj().T
        _require_pd(terms.R, "D + D^T", FeedthroughNotPR, variant, "the model must be strictly positive-real at infinity")
    elif variant == Variant.BR:
        terms.Rp = np.eye(p) - D @ D.conj().T
        terms.Rq = np.eye(m) - D.conj().T @ D
        hint = "scale the model so that ||D|| < 1"
        _require_pd(terms.Rp, "I - D D^T", FeedthroughNotBR, variant, hint)
        _require_pd(terms.Rq, "I - D^T D", FeedthroughNotBR, variant, hint)
        terms.Rb = np.eye(m) + D.conj().T @ np.linalg.solve(terms.Rp, D)
        terms.Rc = np.eye(p) + D @ np.linalg.solve(terms.Rq, D.conj().T)
    elif variant in (Variant.SW, Variant.BST):
        terms.Rs = D @ D.conj().T
        _require_pd(terms.Rs, "D D^T", FeedthroughSingular, variant, "the feedthrough must have full row rank")
    return terms


# =============================================================================
# Base class
# =============================================================================


def block_diag(blocks: List[np.ndarray]) -> np.ndarray:
    """Block-diagonal matrix (complex), empty for no blocks."""
    if not blocks:
        return np.zeros((0, 0), dtype=complex)
    return sla.block_diag(*blocks).astype(complex)


class BaseVariant(ABC):
    """
    Abstract base class for all balanced-truncation variants.

    Parameters
    ----------
    loewner : LoewnerQuadruple
        Quadruple assembled from the samples.
    config : VariantConfig
        Run configuration.

    Attributes
    ----------
    right_shift, left_shift : ShiftSystem
        ``(S_v, L_v)`` and ``(S_w, L_w)``.
    terms : FeedthroughTerms
        Validated feedthrough weights.
    right_gramian : np.ndarray or None
        Projected controllability-type Gramian of the last right-side
        computation (BST consumes it).

    Methods
    -------
    compute()
        Compute both sides and return a FactorPair.
    adi_right(fast), adi_left(fast)
        Factors from right-half-plane samples (abstract).
    ddp_right(fast), ddp_left(fast)
        Factors from imaginary-axis samples (abstract).
    direct_right(), direct_left()
        Factors from the model-based equations applied to the projected
        realizations (abstract).

    Examples
    --------
    >>> variant = BTVariant(assemble(samples), VariantConfig(mode="adi"))
    >>> pair = variant.compute()
    >>> pair.Lp.shape
    (12, 12)
    """

    name: ClassVar[Variant] = Variant.BT
    # Fast closed forms that void the variant's structural guarantee
    fast_path_loses_guarantee: ClassVar[bool] = False

    def __init__(self, loewner: LoewnerQuadruple, config: VariantConfig) -> None:
        if config.variant != self.name:
            raise ConfigError(
                "Configuration is for another variant",
                details={"expected": self.name.value, "found": config.variant.value},
            )
        self.loewner = loewner
        self.config = config
        self.right_shift = build_shift_system(loewner.right_points, loewner.m, RIGHT)
        self.left_shift = build_shift_system(loewner.left_points, loewner.p, LEFT)
        self.terms = feedthrough_terms(self.name, loewner.D)
        self.right_gramian: Optional[np.ndarray] = None
        self._check_mode()
        logger.debug(
            f"Initialized {self.__class__.__name__} (mode={config.mode.value}, "
            f"v={loewner.v}, w={loewner.w})"
        )

    # ------------------------------------------------------------------ setup

    def _check_mode(self) -> None:
        points = np.concatenate([self.loewner.right_points, self.loewner.left_points])
        if points.size == 0:
            raise ModePointMismatch("No interpolation points", variant=self.name.value)
        if self.adi:
            if float(np.min(points.real)) <= 0.0:
                raise ModePointMismatch(
                    "ADI mode needs points in the open right half-plane",
                    variant=self.name.value,
                    hint="sample with --offset > 0 or use --mode ddp",
                    details={"mode": "adi", "min_real_part": float(np.min(points.real))},
                )
        else:
            tol = AXIS_RTOL * np.maximum(1.0, np.abs(points))
            if np.any(np.abs(points.real) > tol):
                raise ModePointMismatch(
                    "DDP mode needs points on the imaginary axis",
                    variant=self.name.value,
                    hint="sample with --offset 0 or use --mode adi",
                    details={"mode": "ddp", "max_abs_real_part": float(np.max(np.abs(points.real)))},
                )

    @property
    def adi(self) -> bool:
        return self.config.mode == Mode.ADI

    @property
    def eps(self) -> float:
        """Epsilon of an imaginary-axis run."""
        if self.config.eps is None:
            raise ConfigError(
                "DDP mode needs an epsilon",
                details={"variant": self.name.value, "hint": "pass --eps or --eps-auto"},
            )
        return float(self.config.eps)

    @cached_property
    def right_zeta(self) -> FreeParameter:
        return resolve_zeta(
            self.right_shift,
            adi=self.adi,
            eps=self.config.eps,
            supplied=self.config.zeta_right,
            rule=self.config.zeta_rule,
            cond_guard=self.config.cond_guard,
        )

    @cached_property
    def left_zeta(self) -> FreeParameter:
        supplied = self.config.zeta_left
        if supplied is None and self.config.zeta_right is not None:
            supplied = np.asarray(self.config.zeta_right).T
        return resolve_zeta(
            self.left_shift,
            adi=self.adi,
            eps=self.config.eps,
            supplied=supplied,
            rule=self.config.zeta_rule,
            cond_guard=self.config.cond_guard,
        )

    # ---------------------------------------------------------------- helpers

    def right_values(self) -> List[np.ndarray]:
        """``H(sigma_j)`` blocks (p x m)."""
        m = self.loewner.m
        return [self.loewner.CV[:, j * m:(j + 1) * m] for j in range(self.loewner.v)]

    def left_values(self) -> List[np.ndarray]:
        """``H(mu_i)`` blocks (p x m)."""
        p = self.loewner.p
        return [self.loewner.WB[i * p:(i + 1) * p, :] for i in range(self.loewner.w)]

    def inverse_factor(
        self,
        G: np.ndarray,
        error_cls: Type[LoewnerBTError],
        name: str,
        hint: Optional[str] = None,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Return ``(G^{-1}, L)`` with ``L L* = G^{-1}`` under the condition guard."""
        inv = hermitian_part(
            guarded_solve(G, np.eye(G.shape[0]), error_cls, name, hint, self.config.cond_guard)
        )
        return inv, psd_factor(inv)

    def check_transform(self, T: np.ndarray, error_cls: Type[VariantError], name: str) -> None:
        """Raise ``error_cls`` if a transformation is numerically singular."""
        cond = float(np.linalg.cond(T)) if T.size else 1.0
        if not np.isfinite(cond) or cond > self.config.cond_guard:
            raise error_cls(
                f"{name} is numerically singular",
                variant=self.name.value,
                hint="shrink epsilon (choose_epsilon contexts 'tv_dom' / 'tv_ddp')",
                details={"cond": cond},
            )
        logger.debug(f"cond({name}) = {cond:.3e}")

    @staticmethod
    def closed_form_gramian(X: np.ndarray, scale: float, sign: int) -> np.ndarray:
        """
        Diagonal block ``scale (I + (I + sign X)^{1/2})^{-1}`` of a projected
        Riccati solution with quadratic term ``X`` on the imaginary axis.
        """
        eye = np.eye(X.shape[0])
        root = sqrt_psd(hermitian_part(eye + sign * X))
        return hermitian_part(scale * np.linalg.inv(eye + root))

    # ------------------------------------------------------------------ hooks

    @abstractmethod
    def adi_right(self, fast: bool) -> Tuple[np.ndarray, np.ndarray]:
        """Right factors ``(T_v, L_p)`` from right-half-plane samples."""

    @abstractmethod
    def adi_left(self, fast: bool) -> Tuple[np.ndarray, np.ndarray]:
        """Left factors ``(T_w, L_q)`` from right-half-plane samples."""

    @abstractmethod
    def ddp_right(self, fast: bool) -> Tuple[np.ndarray, np.ndarray]:
        """Right factors from imaginary-axis samples."""

    @abstractmethod
    def ddp_left(self, fast: bool) -> Tuple[np.ndarray, np.ndarray]:
        """Left factors from imaginary-axis samples."""

    @abstractmethod
    def direct_right(self) -> Tuple[np.ndarray, np.ndarray]:
        """Right factors from the model-based equations of the right interpolant."""

    @abstractmethod
    def direct_left(self) -> Tuple[np.ndarray, np.ndarray]:
        """Left factors from the model-based equations of the left interpolant."""

    # --------------------------------------------------------------- template

    def right_factors(self) -> Tuple[np.ndarray, np.ndarray]:
        if self.config.uses_direct_route:
            return self.direct_right()
        if self.adi:
            return self.adi_right(self.config.fast_path)
        return self.ddp_right(self.config.fast_path)

    def left_factors(self) -> Tuple[np.ndarray, np.ndarray]:
        if self.config.uses_direct_route:
            return self.direct_left()
        if self.adi:
            return self.adi_left(self.config.fast_path)
        return self.ddp_left(self.config.fast_path)

    def run_sides(self) -> Tuple[Tuple[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]:
        """Compute both sides; concurrent unless a subclass sequences them."""
        runner = TaskRunner(min(2, self.config.max_workers or 2))
        return runner.run_pair(self.right_factors, self.left_factors)

    def compute(self) -> FactorPair:
        """
        Compute the factor pair.

        Returns
        -------
        FactorPair
            Factors with run metadata (zeta modes, route, epsilon).
        """
        cfg = self.config
        route = "direct" if cfg.uses_direct_route else ("fast" if cfg.fast_path else "exact")
        logger.info(f"Computing {self.name.value} factors (mode={cfg.mode.value}, route={route})")
        if cfg.fast_path and cfg.uses_direct_route:
            logger.warning("Fast path ignored: supplied free parameters use the direct route")
        elif cfg.fast_path and self.fast_path_loses_guarantee:
            logger.warning(
                f"Fast path for {self.name.value}: the reduced model is no longer "
                f"guaranteed to keep the variant's structure"
            )

        (Tv, Lp), (Tw, Lq) = self.run_sides()
        pair = FactorPair(
            Tv=Tv,
            Lp=Lp,
            Tw=Tw,
            Lq=Lq,
            variant=self.name,
            mode=cfg.mode,
            metadata={"route": route, "eps": cfg.eps},
        )
        for side in ("right", "left"):
            fp = self.__dict__.get(f"{side}_zeta")
            if fp is not None:
                pair.metadata[f"{side}_zeta_mode"] = fp.mode.value
        pair.validate()
        logger.info(f"Factors ready: Lp {Lp.shape}, Lq {Lq.shape}")
        return pair

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}(mode='{self.config.mode.value}', "
            f"v={self.loewner.v}, w={self.loewner.w})"
        )

