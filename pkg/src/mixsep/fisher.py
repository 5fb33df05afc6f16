"""Fisher discriminant eigenproblem B v = lambda T v.

Solved by reducing to a symmetric problem through the spectral square
root of T, so eigenvalues land in [0, 1] and eigenvectors come out
T-normalized (v^T T v = 1).  With k classes at most k - 1 eigenvalues
are nonzero; the smallest and the average of those top k - 1 serve as
the distinctness coefficients ``lambda_min`` and ``lambda_avg``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ResidualCheckError, SingularMatrixError
from .linalg import sym_eig, symmetrize

__all__ = [
    "FisherSolution",
    "fisher_eigen",
    "fisher_eigen_from_matrices",
    "fisher_criterion",
]


@dataclass(frozen=True)
class FisherSolution:
    """Solution of B v = lambda T v.

    ``eigenvalues`` are all d of them in non-increasing order;
    ``eigenvectors`` the matching columns with v^T T v = 1.
    ``lambda_min`` is the smallest of the top ``n_classes - 1``
    eigenvalues, ``lambda_avg`` their mean.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    n_classes: int

    @property
    def lambda_min(self):
        return float(self.eigenvalues[self.n_classes - 2])

    @property
    def lambda_avg(self):
        return float(np.mean(self.eigenvalues[: self.n_classes - 1]))


def fisher_eigen_from_matrices(
    total, between, n_classes, rank_tol=1e-10, residual_tol=1e-8
):
    """Solve B v = lambda T v for given scatter matrices.

    ``total`` must be strictly positive definite: if its smallest
    eigenvalue does not exceed ``rank_tol`` times the largest,
    ``SingularMatrixError`` is raised.  Each eigenpair is verified
    against its defining equation; a residual above ``residual_tol``
    (relative to |B v|, floor 1) raises ``ResidualCheckError``.
    """
    total = symmetrize(total)
    between = symmetrize(between)
    d = total.shape[0]
    if between.shape != total.shape:
        raise ValueError("total and between scatter must have equal shapes")
    n_classes = int(n_classes)
    if not 2 <= n_classes <= d + 1:
        raise ValueError(
            f"n_classes must lie in [2, d + 1] = [2, {d + 1}], got {n_classes}"
        )

    spec = sym_eig(total)
    if spec.eigenvalues[-1] <= rank_tol * max(spec.eigenvalues[0], 0.0):
        raise SingularMatrixError(
            "total scatter is numerically singular "
            f"(eigenvalue ratio {spec.eigenvalues[-1]:g} / {spec.eigenvalues[0]:g})"
        )

    # Reduce through T^(-1/2) = A L^(-1/2): the pencil becomes an ordinary
    # symmetric eigenproblem and back-transformed vectors satisfy v^T T v = 1.
    inv_root = spec.eigenvectors / np.sqrt(spec.eigenvalues)
    reduced = symmetrize(inv_root.T @ between @ inv_root)
    inner = sym_eig(reduced)
    eigenvalues = inner.eigenvalues
    eigenvectors = inv_root @ inner.eigenvectors

    bv = between @ eigenvectors
    residuals = np.linalg.norm(bv - (total @ eigenvectors) * eigenvalues, axis=0)
    limits = residual_tol * np.maximum(np.linalg.norm(bv, axis=0), 1.0)
    bad = np.flatnonzero(residuals > limits)
    if bad.size:
        i = int(bad[0])
        raise ResidualCheckError(
            f"eigenpair {i} fails its defining equation: residual "
            f"{residuals[i]:g} > {limits[i]:g}"
        )
    return FisherSolution(
        eigenvalues=eigenvalues, eigenvectors=eigenvectors, n_classes=n_classes
    )


def fisher_eigen(scatter, n_classes=None):
    """Solve the eigenproblem for a :class:`ScatterDecomposition`."""
    if n_classes is None:
        n_classes = scatter.class_sizes.size
    return fisher_eigen_from_matrices(scatter.total, scatter.between, n_classes)


def fisher_criterion(scatter, v):
    """Rayleigh quotient v^T B v / v^T T v for a direction ``v``."""
    v = np.asarray(v, dtype=float)
    denom = float(v @ scatter.total @ v)
    if denom <= 0:
        raise ValueError("direction has non-positive total scatter")
    return float(v @ scatter.between @ v) / denom
