"""
Dense Matrix-Equation Kernels
=============================

Complex dense kernels on which every other module is built: Sylvester,
Lyapunov and stabilizing algebraic Riccati solvers, positive semidefinite
factorizations, spectra and singular value decompositions.

All kernels promote their inputs to complex128. Interpolation points are
complex throughout the package, so real-only code paths are not kept.

Functions
---------
solve_sylvester
    Solve ``A X + X B + C = 0``.
solve_lyapunov
    Solve ``A X + X A* + Q = 0``.
solve_care_stabilizing
    Stabilizing solution of ``A* X + X A + Q + sign X G X = 0``.
psd_factor
    Square factor ``L`` with ``M = L L*``.
sqrt_psd
    Hermitian square root of a PSD matrix.
inv_sqrt_pd
    Hermitian inverse square root of a PD matrix.
guarded_solve
    Linear solve with a condition-number guard.
spectrum
    Sorted eigenvalues with the maximal real part.
svd
    Thin singular value decomposition ``M = U diag(s) V*``.

Notes
-----
Sylvester and Lyapunov equations use the Bartels-Stewart algorithm as
implemented by :func:`scipy.linalg.solve_sylvester` (complex Schur forms
of both coefficients followed by triangular back-substitution), with one
step of iterative refinement when the first residual is above tolerance.
The Riccati solver takes the stable invariant subspace of the Hamiltonian
matrix from an ordered complex Schur form and polishes it with one
Newton-Kleinman step.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple, Type

import numpy as np
import scipy.linalg as sla

from src.core.exceptions import (
    ConvergenceFailure,
    DimensionMismatch,
    IndefiniteMatrix,
    LoewnerBTError,
    NoStabilizingSolution,
    NotHermitian,
    SpectrumOverlap,
)

# Module logger
logger = logging.getLogger(__name__)

SYLVESTER_RTOL = 1e-10
CARE_RTOL = 1e-9
HERMITIAN_RTOL = 1e-12
PSD_CLIP = 1e-10
SEPARATION_RTOL = 1e-12
COND_GUARD = 1e12


@dataclass
class SpectrumReport:
    """
    Eigenvalues of a square matrix.

    Attributes
    ----------
    eigenvalues : np.ndarray
        Eigenvalues sorted by imaginary part, then real part.
    max_real_part : float
        Largest real part (negative for Hurwitz matrices).
    """

    eigenvalues: np.ndarray
    max_real_part: float

    @property
    def is_hurwitz(self) -> bool:
        return bool(self.max_real_part < 0)

    def __repr__(self) -> str:
        return (
            f"SpectrumReport(n={self.eigenvalues.size}, "
            f"max_real_part={self.max_real_part:.3e})"
        )


# =============================================================================
# Helpers
# =============================================================================


def as_complex_matrix(M: np.ndarray, name: str = "matrix") -> np.ndarray:
    """Return ``M`` as a 2-D complex128 array or raise DimensionMismatch."""
    arr = np.asarray(M, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2:
        raise DimensionMismatch(
            f"{name} must be two-dimensional", details={"shape": arr.shape}
        )
    return arr


def _require_square(M: np.ndarray, name: str, equation: str) -> None:
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch(
            f"{name} must be square",
            equation=equation,
            details={name: M.shape},
        )


def hermitian_part(M: np.ndarray) -> np.ndarray:
    """Return ``(M + M*) / 2``."""
    return 0.5 * (M + M.conj().T)


def is_hermitian(M: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    """Check ``||M - M*||_F <= rtol ||M||_F``."""
    scale = np.linalg.norm(M)
    if scale == 0.0:
        return True
    return bool(np.linalg.norm(M - M.conj().T) <= rtol * scale)


def _eigvals(M: np.ndarray, equation: str) -> np.ndarray:
    try:
        return sla.eigvals(M)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise ConvergenceFailure(
            "Eigenvalue computation did not converge", equation=equation
        ) from e


def _check_separation(
    A: np.ndarray,
    B: np.ndarray,
    equation: str,
) -> None:
    """Raise SpectrumOverlap unless spec(A) and spec(-B) are separated."""
    if A.size == 0 or B.size == 0:
        return
    ev_a = _eigvals(A, equation)
    ev_b = _eigvals(B, equation)
    gap = float(np.min(np.abs(ev_a[:, None] + ev_b[None, :])))
    scale = np.linalg.norm(A, 2) + np.linalg.norm(B, 2)
    if gap <= SEPARATION_RTOL * max(scale, 1.0):
        raise SpectrumOverlap(
            "Coefficient spectra are not separated (spec(A) meets spec(-B))",
            equation=equation,
            details={"gap": gap, "scale": float(scale)},
        )


# =============================================================================
# Matrix Equations
# =============================================================================


def solve_sylvester(
    A: np.ndarray,
    B: np.ndarray,
    C: np.ndarray,
    equation: str = "sylvester",
) -> np.ndarray:
    """
    Solve the Sylvester equation ``A X + X B + C = 0``.

    Parameters
    ----------
    A : array_like, shape (n, n)
    B : array_like, shape (k, k)
    C : array_like, shape (n, k)
    equation : str, default="sylvester"
        Name used in log messages and error details.

    Returns
    -------
    np.ndarray
        Complex solution ``X`` of shape (n, k).

    Raises
    ------
    DimensionMismatch
        If the operand shapes are inconsistent.
    SpectrumOverlap
        If ``A`` and ``-B`` share an eigenvalue (to relative tolerance).

    Examples
    --------
    >>> solve_sylvester([[-1.0]], [[-2.0]], [[3.0]])
    array([[1.+0.j]])
    """
    A = as_complex_matrix(A, "A")
    B = as_complex_matrix(B, "B")
    C = as_complex_matrix(C, "C")
    _require_square(A, "A", equation)
    _require_square(B, "B", equation)
    if C.shape != (A.shape[0], B.shape[0]):
        raise DimensionMismatch(
            "C must have shape (rows of A, rows of B)",
            equation=equation,
            details={"A": A.shape, "B": B.shape, "C": C.shape},
        )
    if C.size == 0:
        return np.zeros_like(C)

    _check_separation(A, B, equation)

    X = sla.solve_sylvester(A, B, -C)

    def residual(Y: np.ndarray) -> np.ndarray:
        return A @ Y + Y @ B + C

    scale = (
        np.linalg.norm(A) * np.linalg.norm(X)
        + np.linalg.norm(X) * np.linalg.norm(B)
        + np.linalg.norm(C)
    )
    R = residual(X)
    res = np.linalg.norm(R)
    if scale > 0 and res > SYLVESTER_RTOL * scale:
        X = X + sla.solve_sylvester(A, B, -R)
        res = np.linalg.norm(residual(X))
    logger.debug(
        f"{equation}: n={A.shape[0]} k={B.shape[0]} "
        f"relative residual={res / scale if scale else 0.0:.2e}"
    )
    return X


def solve_lyapunov(
    A: np.ndarray,
    Q: np.ndarray,
    equation: str = "lyapunov",
) -> np.ndarray:
    """
    Solve the Lyapunov equation ``A X + X A* + Q = 0``.

    ``Q`` must be Hermitian; the returned ``X`` is exactly Hermitian.

    Raises
    ------
    NotHermitian
        If ``Q`` is not Hermitian to relative tolerance 1e-12.
    SpectrumOverlap
        If ``A`` and ``-A*`` share an eigenvalue.
    """
    A = as_complex_matrix(A, "A")
    Q = as_complex_matrix(Q, "Q")
    _require_square(A, "A", equation)
    if Q.shape != A.shape:
        raise DimensionMismatch(
            "Q must have the shape of A",
            equation=equation,
            details={"A": A.shape, "Q": Q.shape},
        )
    if not is_hermitian(Q):
        raise NotHermitian("Right-hand side Q is not Hermitian", equation=equation)

    X = solve_sylvester(A, A.conj().T, hermitian_part(Q), equation=equation)
    return hermitian_part(X)


def solve_care_stabilizing(
    A: np.ndarray,
    G: np.ndarray,
    Q: np.ndarray,
    sign: int = -1,
    equation: str = "care",
) -> np.ndarray:
    """
    Stabilizing solution of ``A* X + X A + Q + sign X G X = 0``.

    Parameters
    ----------
    A : array_like, shape (n, n)
    G : array_like, shape (n, n)
        Hermitian positive semidefinite quadratic weight.
    Q : array_like, shape (n, n)
        Hermitian positive semidefinite constant term.
    sign : {-1, +1}, default=-1
        ``-1`` for filter/controller (LQG) type equations, ``+1`` for the
        positive-real and bounded-real type equations.
    equation : str, default="care"
        Name used in log messages and error details.

    Returns
    -------
    np.ndarray
        Hermitian ``X`` such that ``A + sign G X`` is Hurwitz.

    Raises
    ------
    NoStabilizingSolution
        If the Hamiltonian has eigenvalues on (or too near) the imaginary
        axis, if its stable subspace is not a graph, or if the closed loop
        is not Hurwitz.

    Examples
    --------
    >>> solve_care_stabilizing([[-1.0]], [[1.0]], [[1.0]], sign=-1)
    array([[0.41421356+0.j]])
    """
    if sign not in (-1, 1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    A = as_complex_matrix(A, "A")
    G = hermitian_part(as_complex_matrix(G, "G"))
    Q = hermitian_part(as_complex_matrix(Q, "Q"))
    _require_square(A, "A", equation)
    n = A.shape[0]
    if G.shape != (n, n) or Q.shape != (n, n):
        raise DimensionMismatch(
            "G and Q must have the shape of A",
            equation=equation,
            details={"A": A.shape, "G": G.shape, "Q": Q.shape},
        )
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)

    H = np.block([[A, sign * G], [-Q, -A.conj().T]])
    h_scale = max(np.linalg.norm(H, 1), 1.0)
    ev = _eigvals(H, equation)
    axis_gap = float(np.min(np.abs(ev.real)))
    if axis_gap <= 1e-10 * h_scale:
        raise NoStabilizingSolution(
            "Hamiltonian matrix has eigenvalues on the imaginary axis",
            equation=equation,
            details={"min_abs_real": axis_gap},
        )

    try:
        T, Z, sdim = sla.schur(H, output="complex", sort="lhp")
    except (np.linalg.LinAlgError, ValueError) as e:
        raise ConvergenceFailure(
            "Ordered Schur decomposition failed", equation=equation
        ) from e
    if sdim != n:
        raise NoStabilizingSolution(
            "Stable invariant subspace has wrong dimension",
            equation=equation,
            details={"stable": int(sdim), "expected": n},
        )

    U1 = Z[:n, :n]
    U2 = Z[n:, :n]
    if np.linalg.cond(U1) > 1.0 / np.finfo(float).eps:
        raise NoStabilizingSolution(
            "Stable invariant subspace is not a graph subspace",
            equation=equation,
        )
    X = hermitian_part(np.linalg.solve(U1.conj().T, U2.conj().T).conj().T)

    def residual(Y: np.ndarray) -> np.ndarray:
        return A.conj().T @ Y + Y @ A + Q + sign * (Y @ G @ Y)

    R = residual(X)
    res = np.linalg.norm(R)
    closed = A + sign * (G @ X)
    try:
        delta = solve_lyapunov(closed.conj().T, hermitian_part(R), equation=equation)
        candidate = hermitian_part(X + delta)
        cand_res = np.linalg.norm(residual(candidate))
        if cand_res < res:
            X, res = candidate, cand_res
    except LoewnerBTError:
        logger.debug(f"{equation}: Newton-Kleinman polish skipped")

    closed = A + sign * (G @ X)
    max_re = float(np.max(_eigvals(closed, equation).real))
    if max_re >= 0:
        raise NoStabilizingSolution(
            "Closed-loop matrix is not Hurwitz",
            equation=equation,
            details={"max_real_part": max_re},
        )

    scale = (
        2 * np.linalg.norm(A) * np.linalg.norm(X)
        + np.linalg.norm(Q)
        + np.linalg.norm(G) * np.linalg.norm(X) ** 2
    )
    logger.debug(
        f"{equation}: n={n} sign={sign:+d} relative residual="
        f"{res / scale if scale else 0.0:.2e} closed-loop abscissa={max_re:.3e}"
    )
    return X


# =============================================================================
# Factorizations
# =============================================================================


def _psd_eig(
    M: np.ndarray, clip: float, equation: str
) -> Tuple[np.ndarray, np.ndarray]:
    if np.isrealobj(M):
        M = np.atleast_2d(np.asarray(M, dtype=float))
    else:
        M = as_complex_matrix(M, "M")
    _require_square(M, "M", equation)
    if not is_hermitian(M, 1e-8):
        raise NotHermitian("Matrix is not Hermitian", equation=equation)
    w, V = np.linalg.eigh(hermitian_part(M))
    lam_max = float(np.max(np.abs(w))) if w.size else 0.0
    if w.size and w.min() < -clip * lam_max:
        raise IndefiniteMatrix(
            "Matrix has a significantly negative eigenvalue",
            equation=equation,
            details={"min_eig": float(w.min()), "max_eig": lam_max},
        )
    w = np.where(w < clip * lam_max, 0.0, w)
    return w, V


def psd_factor(M: np.ndarray, clip: float = PSD_CLIP) -> np.ndarray:
    """
    Square factor ``L`` with ``L L* = M`` for Hermitian PSD ``M``.

    Eigenvalues below ``clip * lambda_max`` are treated as zero, which
    absorbs roundoff in matrices assembled from samples. Real input gives
    a real factor.

    Raises
    ------
    IndefiniteMatrix
        If the smallest eigenvalue is below ``-clip * lambda_max``.
    """
    w, V = _psd_eig(M, clip, "psd_factor")
    return V * np.sqrt(w)[None, :]


def sqrt_psd(M: np.ndarray, clip: float = PSD_CLIP) -> np.ndarray:
    """Hermitian PSD square root of a Hermitian PSD matrix."""
    w, V = _psd_eig(M, clip, "sqrt_psd")
    return hermitian_part((V * np.sqrt(w)[None, :]) @ V.conj().T)


def inv_sqrt_pd(M: np.ndarray, name: str = "M") -> np.ndarray:
    """Hermitian inverse square root of a Hermitian positive definite matrix."""
    w, V = _psd_eig(M, 0.0, f"inv_sqrt({name})")
    if w.size and w.min() <= 0:
        raise IndefiniteMatrix(
            f"{name} is not positive definite",
            equation=f"inv_sqrt({name})",
            details={"min_eig": float(w.min())},
        )
    return hermitian_part((V / np.sqrt(w)[None, :]) @ V.conj().T)


def guarded_solve(
    M: np.ndarray,
    rhs: np.ndarray,
    error_cls: Type[LoewnerBTError],
    name: str,
    hint: Optional[str] = None,
    cond_guard: float = COND_GUARD,
) -> np.ndarray:
    """
    Solve ``M X = rhs`` unless ``M`` is too ill-conditioned.

    Parameters
    ----------
    M : np.ndarray
        Square coefficient matrix.
    rhs : np.ndarray
        Right-hand side.
    error_cls : type
        Exception raised when ``cond(M) > cond_guard``. It must accept
        ``(message, hint=..., details=...)``.
    name : str
        Matrix name for diagnostics (``"Q_v"``, ``"T_w"``...).
    hint : str, optional
        Remediation hint attached to the error.
    cond_guard : float, default=1e12
        Largest tolerated 2-norm condition number.
    """
    M = as_complex_matrix(M, name)
    if M.size == 0:
        return np.zeros((0,) + np.shape(rhs)[1:], dtype=np.complex128)
    cond = float(np.linalg.cond(M))
    if not np.isfinite(cond) or cond > cond_guard:
        raise error_cls(  # type: ignore[call-arg]
            f"{name} is numerically singular",
            hint=hint,
            details={"cond": cond, "guard": cond_guard},
        )
    logger.debug(f"cond({name}) = {cond:.3e}")
    return sla.solve(M, rhs)


# =============================================================================
# Spectra and SVD
# =============================================================================


def spectrum(M: np.ndarray) -> SpectrumReport:
    """
    Eigenvalues sorted by imaginary part then real part.

    Raises
    ------
    ConvergenceFailure
        If LAPACK does not converge.
    """
    M = as_complex_matrix(M, "M")
    _require_square(M, "M", "spectrum")
    if M.size == 0:
        return SpectrumReport(np.zeros(0, dtype=np.complex128), -np.inf)
    if not np.any(M.imag):
        M = M.real
    ev = _eigvals(M, "spectrum").astype(np.complex128)
    # Rounding noise on real eigenvalues must not decide the order
    tiny = np.abs(ev.imag) <= SEPARATION_RTOL * max(float(np.linalg.norm(M, 2)), 1.0)
    ev[tiny] = ev[tiny].real
    order = np.lexsort((ev.real, ev.imag))
    ev = ev[order]
    return SpectrumReport(ev, float(np.max(ev.real)))


def svd(M: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Thin SVD ``M = U diag(s) V*`` with nonincreasing ``s``; real input
    gives real factors.

    Falls back to the ``gesvd`` driver if the default divide-and-conquer
    driver fails.

    Returns
    -------
    U : np.ndarray
    s : np.ndarray
    V : np.ndarray
        Right singular vectors as columns (not ``V*``).
    """
    if np.isrealobj(M):
        M = np.atleast_2d(np.asarray(M, dtype=float))
    else:
        M = as_complex_matrix(M, "M")
    try:
        U, s, Vh = sla.svd(M, full_matrices=False)
    except np.linalg.LinAlgError:
        try:
            U, s, Vh = sla.svd(M, full_matrices=False, lapack_driver="gesvd")
        except np.linalg.LinAlgError as e:
            raise ConvergenceFailure("SVD did not converge", equation="svd") from e
    return U, s, Vh.conj().T
