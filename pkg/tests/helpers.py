"""
Shared assertions and models for the test suite.
"""

import numpy as np
from scipy.optimize import linear_sum_assignment

from src.sampling.statespace import StateSpace


def assert_same_eigenvalues(actual, desired, atol):
    """Match two eigenvalue sets by nearest neighbour and compare within atol."""
    actual = np.asarray(actual, dtype=complex).ravel()
    desired = np.asarray(desired, dtype=complex).ravel()
    assert actual.shape == desired.shape
    rows, cols = linear_sum_assignment(np.abs(actual[:, None] - desired[None, :]))
    np.testing.assert_allclose(actual[rows], desired[cols], atol=atol)


def lightly_damped_model(n, m=1, p=1, seed=0, passive=False, damping=(0.02, 0.1), roll_off=0.0):
    """
    Modal model with poles ``-zeta w +/- j w sqrt(1 - zeta^2)``, ``n`` even.

    ``w`` is log-spaced over [0.1, 100] and ``zeta`` drawn from ``damping``.
    Modal input rows scale like ``(w / 0.1)^-roll_off``. With
    ``passive=True`` the model is ``(A, B, B^T, 0.25 I)`` with ``A + A^T``
    negative definite, hence positive-real.
    """
    rng = np.random.default_rng(seed)
    omegas = np.logspace(-1.0, 2.0, n // 2)
    zetas = rng.uniform(*damping, size=n // 2)
    M = np.zeros((n, n))
    for k, (w, z) in enumerate(zip(omegas, zetas)):
        re, im = -z * w, w * np.sqrt(1.0 - z * z)
        M[2 * k:2 * k + 2, 2 * k:2 * k + 2] = [[re, im], [-im, re]]
    U, _ = np.linalg.qr(rng.standard_normal((n, n)))
    weights = np.repeat((omegas / omegas[0]) ** -roll_off, 2)
    B = U.T @ (weights[:, None] * rng.standard_normal((n, m)))
    A = U.T @ M @ U
    if passive:
        B *= np.sqrt(damping[0] * omegas[0]) / np.linalg.norm(B, 2)
        return StateSpace(A=A, B=B, C=B.T.copy(), D=0.25 * np.eye(m))
    C = rng.standard_normal((p, n)) @ U
    return StateSpace(A=A, B=B, C=C, D=np.zeros((p, m)))
