"""Dense symmetric linear-algebra primitives.

Thin, contract-enforcing wrappers around LAPACK (through numpy/scipy):
symmetric eigendecomposition with a fixed non-increasing eigenvalue order,
lower Cholesky factorization, and SPD linear solves.  Everything here is a
pure function; nothing keeps state.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import EigenConvergenceError, NotPositiveDefiniteError

__all__ = [
    "SpectralDecomposition",
    "symmetrize",
    "sym_eig",
    "cholesky_lower",
    "spd_solve",
]

#: Default relative tolerance for accepting an almost-symmetric matrix.
SYMMETRY_TOL = 1e-9


def symmetrize(a, tol=SYMMETRY_TOL):
    """Return the exactly symmetric matrix (a + a.T)/2.

    Asymmetry up to ``tol`` relative to the largest entry magnitude is
    treated as accumulated rounding and averaged away; anything larger is
    rejected with ``ValueError``.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] < 1:
        raise ValueError("matrix dimension must be at least 1")
    scale = max(1.0, float(np.abs(a).max()))
    gap = float(np.abs(a - a.T).max())
    if gap > tol * scale:
        raise ValueError(
            f"matrix is not symmetric: max asymmetry {gap:.3e} exceeds "
            f"{tol:.1e} * {scale:.3e}"
        )
    return 0.5 * (a + a.T)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigendecomposition A = V diag(w) V^T of a symmetric matrix.

    ``eigenvalues`` are sorted non-increasing; ``eigenvectors[:, i]`` is the
    orthonormal eigenvector for ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        """Return V diag(w) V^T."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T


def sym_eig(a, tol=SYMMETRY_TOL):
    """Eigendecomposition of a symmetric matrix, eigenvalues non-increasing.

    Parameters
    ----------
    a : (d, d) array_like
        Symmetric matrix (asymmetry beyond ``tol`` is rejected).

    Returns
    -------
    SpectralDecomposition

    Raises
    ------
    EigenConvergenceError
        If the LAPACK iteration fails to converge.
    """
    a = symmetrize(a, tol)
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(f"eigendecomposition failed: {exc}") from exc
    # eigh returns ascending order; flip to the package-wide descending order
    return SpectralDecomposition(
        eigenvalues=np.ascontiguousarray(w[::-1]),
        eigenvectors=np.ascontiguousarray(v[:, ::-1]),
    )


def cholesky_lower(a, tol=SYMMETRY_TOL):
    """Lower-triangular G with G G^T = a; a must be SPD.

    Raises
    ------
    NotPositiveDefiniteError
        If a pivot is non-positive (a is not positive definite).
    """
    a = symmetrize(a, tol)
    try:
        return np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite: {exc}"
        ) from exc


def spd_solve(a, y, tol=SYMMETRY_TOL):
    """Solve a x = y for SPD a via Cholesky.

    ``y`` may be a vector or a matrix of right-hand sides.
    """
    a = symmetrize(a, tol)
    y = np.asarray(y, dtype=float)
    if y.shape[0] != a.shape[0]:
        raise ValueError(
            f"right-hand side length {y.shape[0]} does not match matrix "
            f"dimension {a.shape[0]}"
        )
    try:
        factor = cho_factor(a, lower=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite: {exc}"
        ) from exc
    return cho_solve(factor, y, check_finite=False)
