"""
State-Space Models
==================

Dense real realizations ``G(s) = C (sI - A)^{-1} B + D`` used as the
transfer-function oracle and by the intrusive reference pipeline.

Classes
-------
StateSpace
    Real realization (A, B, C, D) with evaluation helpers.

Functions
---------
eval_transfer
    ``G(s)`` by one LU factorization of ``sI - A``.
eval_derivative
    ``H'(s) = -C (sI - A)^{-2} B``.
read_model / write_model
    JSON model files.

Example
-------
>>> ss = StateSpace(A=[[-1.0]], B=[[1.0]], C=[[1.0]], D=[[0.0]])
>>> eval_transfer(ss, 1j)
array([[0.5-0.5j]])
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
import scipy.linalg as sla

from src.core.exceptions import (
    DimensionMismatch,
    NotHurwitz,
    ParseError,
    SingularResolvent,
)
from src.core.fileio import (
    PathLike,
    atomic_write_text,
    decode_real_matrix,
    dump_json,
    encode_real_matrix,
    load_json,
)

# Module logger
logger = logging.getLogger(__name__)

# Resolvents with a reciprocal condition estimate below this are singular
RESOLVENT_RCOND = 1e-14


@dataclass
class StateSpace:
    """
    Real state-space realization.

    Attributes
    ----------
    A : np.ndarray, shape (n, n)
    B : np.ndarray, shape (n, m)
    C : np.ndarray, shape (p, n)
    D : np.ndarray, shape (p, m)
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self) -> None:
        self.A = np.atleast_2d(np.asarray(self.A, dtype=float))
        self.B = np.asarray(self.B, dtype=float)
        self.C = np.asarray(self.C, dtype=float)
        n = self.A.shape[0]
        if self.B.ndim == 1:
            self.B = self.B.reshape(n, -1)
        if self.C.ndim == 1:
            self.C = self.C.reshape(-1, n)
        self.D = np.asarray(self.D, dtype=float).reshape(self.C.shape[0], self.B.shape[1])
        if self.A.shape != (n, n):
            raise DimensionMismatch("A must be square", details={"A": self.A.shape})
        if self.B.shape[0] != n or self.C.shape[1] != n:
            raise DimensionMismatch(
                "B and C must match the state dimension",
                details={"A": self.A.shape, "B": self.B.shape, "C": self.C.shape},
            )

    @property
    def n(self) -> int:
        return int(self.A.shape[0])

    @property
    def m(self) -> int:
        return int(self.B.shape[1])

    @property
    def p(self) -> int:
        return int(self.C.shape[0])

    def poles(self) -> np.ndarray:
        return sla.eigvals(self.A)

    def is_hurwitz(self) -> bool:
        return self.n == 0 or bool(np.max(self.poles().real) < 0)

    def require_hurwitz(self) -> None:
        """Raise NotHurwitz unless every eigenvalue of A is in the open LHP."""
        if self.n and not self.is_hurwitz():
            raise NotHurwitz(
                "A has eigenvalues in the closed right half-plane",
                details={"max_real_part": float(np.max(self.poles().real))},
            )

    def transfer(self, s: complex) -> np.ndarray:
        return eval_transfer(self, s)

    def derivative(self, s: complex) -> np.ndarray:
        return eval_derivative(self, s)

    def similarity(self, T: np.ndarray) -> "StateSpace":
        """Return the realization (T^-1 A T, T^-1 B, C T, D)."""
        T = np.asarray(T, dtype=float)
        return StateSpace(
            A=np.linalg.solve(T, self.A @ T),
            B=np.linalg.solve(T, self.B),
            C=self.C @ T,
            D=self.D.copy(),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "m": self.m,
            "p": self.p,
            "A": encode_real_matrix(self.A),
            "B": encode_real_matrix(self.B),
            "C": encode_real_matrix(self.C),
            "D": encode_real_matrix(self.D),
        }

    @classmethod
    def from_dict(cls, data: Any, path: Optional[str] = None) -> "StateSpace":
        if not isinstance(data, dict):
            raise ParseError("Model file must hold a JSON object", path=path)
        for key in ("n", "m", "p", "A", "B", "C", "D"):
            if key not in data:
                raise ParseError("Missing field", path=path, field=key)
        try:
            n, m, p = int(data["n"]), int(data["m"]), int(data["p"])
        except (TypeError, ValueError) as e:
            raise ParseError("n, m, p must be integers", path=path) from e
        return cls(
            A=decode_real_matrix(data["A"], "A", (n, n), path),
            B=decode_real_matrix(data["B"], "B", (n, m), path),
            C=decode_real_matrix(data["C"], "C", (p, n), path),
            D=decode_real_matrix(data["D"], "D", (p, m), path),
        )

    def __repr__(self) -> str:
        return f"StateSpace(n={self.n}, m={self.m}, p={self.p})"


# =============================================================================
# Evaluation
# =============================================================================


def _resolvent_lu(ss: StateSpace, s: complex) -> Tuple[Any, Any]:
    M = complex(s) * np.eye(ss.n) - ss.A
    lu, piv = sla.lu_factor(M, check_finite=True)
    diag = np.abs(np.diag(lu))
    scale = np.linalg.norm(M, 1)
    rcond = float(diag.min() / max(diag.max(), scale)) if diag.size else 1.0
    if not np.isfinite(rcond) or rcond < RESOLVENT_RCOND:
        raise SingularResolvent(
            "sI - A is numerically singular",
            details={"s": repr(complex(s)), "rcond": rcond},
        )
    return lu, piv


def eval_transfer(ss: StateSpace, s: complex) -> np.ndarray:
    """
    Evaluate ``G(s) = C (sI - A)^{-1} B + D``.

    One LU factorization of ``sI - A`` is solved against all input columns;
    no explicit inverse is formed.

    Raises
    ------
    SingularResolvent
        If ``s`` is numerically an eigenvalue of ``A``.
    """
    if ss.n == 0:
        return ss.D.astype(complex)
    lu_piv = _resolvent_lu(ss, s)
    X = sla.lu_solve(lu_piv, ss.B.astype(complex))
    return ss.C @ X + ss.D


def eval_derivative(ss: StateSpace, s: complex) -> np.ndarray:
    """Evaluate ``H'(s) = -C (sI - A)^{-2} B``."""
    if ss.n == 0:
        return np.zeros((ss.p, ss.m), dtype=complex)
    lu_piv = _resolvent_lu(ss, s)
    X = sla.lu_solve(lu_piv, ss.B.astype(complex))
    Y = sla.lu_solve(lu_piv, X)
    return -(ss.C @ Y)


# =============================================================================
# Model Files
# =============================================================================


def read_model(path: PathLike) -> StateSpace:
    """Read a state-space JSON file."""
    data = load_json(path)
    model = StateSpace.from_dict(data, path=str(path))
    logger.debug(f"Read model n={model.n} m={model.m} p={model.p} from {path}")
    return model


def write_model(model: StateSpace, path: PathLike, extra: Optional[Dict[str, Any]] = None) -> None:
    """Write a state-space JSON file atomically."""
    data = model.to_dict()
    if extra:
        data.update(extra)
    atomic_write_text(path, dump_json(data))
    logger.debug(f"Wrote model to {path}")
