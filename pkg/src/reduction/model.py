"""
Reduced Models
==============

Complex or real reduced-order realizations
``G_r(s) = C_r (sI - A_r)^{-1} B_r + D_r`` with their Hankel-like values,
plus the ROM JSON file format (the state-space schema extended by
``field``, ``hankel_values`` and run metadata).
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Sequence

import numpy as np
import scipy.linalg as sla

from src.core.exceptions import AssumptionViolated, ParseError
from src.core.fileio import (
    PathLike,
    atomic_write_text,
    decode_complex_matrix,
    decode_real_matrix,
    dump_json,
    encode_complex_matrix,
    encode_real_matrix,
    load_json,
)
from src.sampling.statespace import StateSpace

# Module logger
logger = logging.getLogger(__name__)


class Field(str, Enum):
    """Number field of a realization."""

    COMPLEX = "complex"
    REAL = "real"


@dataclass
class ReducedModel:
    """
    Reduced-order realization.

    Attributes
    ----------
    A : np.ndarray, shape (r, r)
    B : np.ndarray, shape (r, m)
    C : np.ndarray, shape (p, r)
    D : np.ndarray, shape (p, m)
    field : Field
        ``REAL`` once the matrices have been realified.
    hankel_values : np.ndarray
        Full nonincreasing sequence of singular values from the
        square-root step (empty for interpolants).
    metadata : dict
        Run information (variant, mode, epsilon...).
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    field: Field = Field.COMPLEX
    hankel_values: np.ndarray = dataclasses.field(default_factory=lambda: np.zeros(0))
    metadata: Dict[str, Any] = dataclasses.field(default_factory=dict)

    def __post_init__(self) -> None:
        dtype = float if self.field == Field.REAL else complex
        self.A = np.atleast_2d(np.asarray(self.A, dtype=dtype))
        r = self.A.shape[0]
        self.B = np.asarray(self.B, dtype=dtype).reshape(r, -1)
        self.C = np.asarray(self.C, dtype=dtype).reshape(-1, r)
        self.D = np.asarray(self.D, dtype=dtype).reshape(self.C.shape[0], self.B.shape[1])
        self.hankel_values = np.asarray(self.hankel_values, dtype=float).ravel()

    @property
    def order(self) -> int:
        return int(self.A.shape[0])

    @property
    def m(self) -> int:
        return int(self.B.shape[1])

    @property
    def p(self) -> int:
        return int(self.C.shape[0])

    def transfer(self, s: complex) -> np.ndarray:
        """Evaluate ``C_r (sI - A_r)^{-1} B_r + D_r``."""
        if self.order == 0:
            return self.D.astype(complex)
        M = complex(s) * np.eye(self.order) - self.A
        return self.C @ np.linalg.solve(M, self.B.astype(complex)) + self.D

    def frequency_response(self, omegas: Sequence[float]) -> np.ndarray:
        """
        ``G_r(j omega)`` on a grid, shape ``(len(omegas), p, m)``.

        Uses one Schur form of ``A_r`` for the whole grid.
        """
        omegas = np.asarray(omegas, dtype=float).ravel()
        out = np.empty((omegas.size, self.p, self.m), dtype=complex)
        if self.order == 0:
            out[:] = self.D
            return out
        T, Z = sla.schur(self.A.astype(complex), output="complex")
        Bt = Z.conj().T @ self.B
        Ct = self.C @ Z
        eye = np.eye(self.order)
        for k, omega in enumerate(omegas):
            X = sla.solve_triangular(1j * omega * eye - T, Bt)
            out[k] = Ct @ X + self.D
        return out

    def poles(self) -> np.ndarray:
        return sla.eigvals(self.A) if self.order else np.zeros(0, dtype=complex)

    def zeros(self) -> np.ndarray:
        """
        Transmission zeros ``eig(A - B D^{-1} C)``.

        Raises
        ------
        AssumptionViolated
            If the model is not square or ``D`` is singular.
        """
        if self.m != self.p:
            raise AssumptionViolated("Zeros need a square model", details={"m": self.m, "p": self.p})
        if np.linalg.cond(self.D) > 1e12:
            raise AssumptionViolated("Zeros need an invertible feedthrough")
        if self.order == 0:
            return np.zeros(0, dtype=complex)
        return sla.eigvals(self.A - self.B @ np.linalg.solve(self.D, self.C))

    def is_stable(self) -> bool:
        return self.order == 0 or bool(np.max(self.poles().real) < 0)

    def to_statespace(self) -> StateSpace:
        """Real :class:`StateSpace` view of a REAL model."""
        if self.field != Field.REAL:
            raise AssumptionViolated("Only realified models convert to StateSpace")
        return StateSpace(A=self.A, B=self.B, C=self.C, D=self.D)

    def to_dict(self) -> Dict[str, Any]:
        encode = encode_real_matrix if self.field == Field.REAL else encode_complex_matrix
        data: Dict[str, Any] = {
            "n": self.order,
            "m": self.m,
            "p": self.p,
            "field": self.field.value,
            "A": encode(self.A),
            "B": encode(self.B),
            "C": encode(self.C),
            "D": encode(self.D),
            "hankel_values": [float(x) for x in self.hankel_values],
        }
        data.update(self.metadata)
        return data

    @classmethod
    def from_dict(cls, data: Any, path: Optional[str] = None) -> "ReducedModel":
        if not isinstance(data, dict):
            raise ParseError("ROM file must hold a JSON object", path=path)
        for key in ("n", "m", "p", "A", "B", "C", "D"):
            if key not in data:
                raise ParseError("Missing field", path=path, field=key)
        try:
            kind = Field(data.get("field", Field.REAL.value))
            n, m, p = int(data["n"]), int(data["m"]), int(data["p"])
        except (TypeError, ValueError) as e:
            raise ParseError("Invalid header fields", path=path) from e
        shapes = {"A": (n, n), "B": (n, m), "C": (p, n), "D": (p, m)}
        if kind == Field.REAL:
            mats = {k: decode_real_matrix(data[k], k, s, path) for k, s in shapes.items()}
        else:
            mats = {k: decode_complex_matrix(data[k], k, s, path) for k, s in shapes.items()}
        reserved = set(shapes) | {"n", "m", "p", "field", "hankel_values"}
        return cls(
            field=kind,
            hankel_values=np.asarray(data.get("hankel_values") or [], dtype=float),
            metadata={k: v for k, v in data.items() if k not in reserved},
            **mats,
        )

    def __repr__(self) -> str:
        return f"ReducedModel(order={self.order}, m={self.m}, p={self.p}, field={self.field.value})"


def write_rom(model: ReducedModel, path: PathLike, extra: Optional[Dict[str, Any]] = None) -> None:
    """Write a ROM JSON file atomically."""
    data = model.to_dict()
    if extra:
        data.update(extra)
    atomic_write_text(path, dump_json(data))
    logger.debug(f"Wrote {model!r} to {path}")


def read_rom(path: PathLike) -> ReducedModel:
    """Read a ROM JSON file."""
    return ReducedModel.from_dict(load_json(path), path=str(path))
