"""Dense Hermitian linear algebra used by every other module.

Operators are plain ``numpy`` arrays of shape ``(n, n)``.  Functions here
validate Hermiticity, symmetrize away rounding noise and return results in a
fixed, reproducible form (ascending eigenvalues, phase-fixed eigenvectors).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import InvalidInputError, SingularMatrixError

HERMITIAN_ATOL = 1e-12
PHASE_FIX_THRESHOLD = 1e-8


class SpectralDecomposition(NamedTuple):
    """Ascending eigenvalues and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U, lam = self.eigenvectors, self.eigenvalues
        return (U * lam) @ U.conj().T


def as_hermitian(A, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Validate ``A`` as a square Hermitian matrix and return ``(A + A*) / 2``.

    Raises
    ------
    InvalidInputError
        If ``A`` is not square, is empty, contains non-finite values or
        deviates from Hermitian symmetry by more than ``atol``.
    """
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise InvalidInputError(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidInputError("matrix has non-finite entries")
    A = A.astype(complex if np.iscomplexobj(A) else float, copy=False)
    asym = np.max(np.abs(A - A.conj().T))
    if asym > atol:
        raise InvalidInputError(f"matrix is not Hermitian (max asymmetry {asym:.3e})")
    return (A + A.conj().T) / 2


def fix_phases(U: np.ndarray, threshold: float = PHASE_FIX_THRESHOLD) -> np.ndarray:
    """Rotate each column so its first entry with modulus above ``threshold`` is real positive."""
    U = np.array(U, copy=True)
    for j in range(U.shape[1]):
        col = U[:, j]
        big = np.flatnonzero(np.abs(col) > threshold)
        if big.size == 0:
            continue
        z = col[big[0]]
        phase = z / abs(z)
        if np.isrealobj(U):
            U[:, j] = col * np.sign(phase)
        else:
            U[:, j] = col * np.conj(phase)
            U[big[0], j] = abs(z)
    return U


def eig_hermitian(A) -> SpectralDecomposition:
    H = as_hermitian(A)
    w, U = np.linalg.eigh(H)
    return SpectralDecomposition(w, fix_phases(U))


def eigvals_hermitian(A) -> np.ndarray:
    return np.linalg.eigvalsh(as_hermitian(A))


def operator_norm(A) -> float:
    w = eigvals_hermitian(A)
    return float(max(abs(w[0]), abs(w[-1])))


def min_eigenvalue(A) -> float:
    H = as_hermitian(A)
    return float(scipy.linalg.eigh(H, eigvals_only=True, subset_by_index=[0, 0])[0])


def max_eigenvalue(A) -> float:
    H = as_hermitian(A)
    n = H.shape[0]
    return float(scipy.linalg.eigh(H, eigvals_only=True, subset_by_index=[n - 1, n - 1])[0])


def is_psd(A, tol: float = 0.0) -> bool:
    if tol < 0:
        raise InvalidInputError("tolerance must be nonnegative")
    return min_eigenvalue(A) >= -tol


def inverse_pd(A) -> np.ndarray:
    """Inverse of a strictly positive definite Hermitian matrix.

    Raises
    ------
    SingularMatrixError
        If the smallest eigenvalue is not above ``1e-12 * ||A||``.
    """
    H = as_hermitian(A)
    w = np.linalg.eigvalsh(H)
    scale = max(abs(w[0]), abs(w[-1]))
    if w[0] <= 1e-12 * scale or scale == 0.0:
        raise SingularMatrixError(f"matrix is not positive definite (min eigenvalue {w[0]:.3e})")
    c, lower = scipy.linalg.cho_factor(H, lower=True)
    B = scipy.linalg.cho_solve((c, lower), np.eye(H.shape[0], dtype=H.dtype))
    return (B + B.conj().T) / 2


def ground_pair(A) -> tuple[float, np.ndarray]:
    """Lowest eigenvalue and phase-fixed unit eigenvector.

    The eigenvalue is returned as the Rayleigh quotient of the computed vector.
    LAPACK's eigenvalue carries an absolute error of order eps * ||A||, which
    for finite sections of unbounded operators grows like the squared window
    size; the Rayleigh quotient error is quadratic in the vector error and the
    rounding in the quadratic form is weighted by the (tiny) tail amplitudes.
    """
    H = as_hermitian(A)
    _, v = scipy.linalg.eigh(H, subset_by_index=[0, 0])
    v = fix_phases(v)[:, 0]
    v = v / np.linalg.norm(v)
    rq = float(np.real(np.vdot(v, H @ v)))
    return rq, v
