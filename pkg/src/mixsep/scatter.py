"""Scatter-matrix decomposition of labeled data.

The total scatter about the grand mean splits exactly into a
between-class part (class-mean offsets, weighted by class size) and a
within-class part (point offsets about their own class mean).  All three
matrices are sums of outer products, not covariances: there is no
division by n.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import symmetrize

__all__ = ["ScatterDecomposition", "scatter_decomposition", "population_scatter"]

# Tolerance for the T = B + W identity, relative to the scale of T.
_SPLIT_TOL = 1e-9


@dataclass(frozen=True)
class ScatterDecomposition:
    """Scatter matrices of a labeled dataset.

    ``total = between + within`` holds to floating-point accuracy.
    ``class_means`` has one column per class (d, k); ``class_sizes`` the
    matching member counts; ``grand_mean`` the mean of all points.
    """

    total: np.ndarray
    between: np.ndarray
    within: np.ndarray
    class_means: np.ndarray
    class_sizes: np.ndarray
    grand_mean: np.ndarray


def scatter_decomposition(data):
    """Total/between/within scatter matrices of a labeled dataset.

    Requires at least two points and at least two distinct labels;
    classes are ``1..max(label)`` and may not be empty.  Single-member
    classes are fine here (they simply contribute nothing to the
    within-class part).
    """
    pts, labels = data.points, data.labels
    n, d = pts.shape
    if n < 2:
        raise ValueError("scatter decomposition needs at least 2 points")
    k = data.n_classes
    if k < 2:
        raise ValueError("scatter decomposition needs at least 2 classes")

    grand_mean = pts.mean(axis=0)
    centered = pts - grand_mean
    total = symmetrize(centered.T @ centered)

    class_means = np.empty((d, k))
    class_sizes = np.empty(k, dtype=np.int64)
    within = np.zeros((d, d))
    for lbl in range(1, k + 1):
        rows = pts[labels == lbl]
        if rows.shape[0] == 0:
            raise ValueError(f"class {lbl} has no members")
        mean = rows.mean(axis=0)
        class_means[:, lbl - 1] = mean
        class_sizes[lbl - 1] = rows.shape[0]
        dev = rows - mean
        within += dev.T @ dev
    within = symmetrize(within)

    offsets = class_means - grand_mean[:, None]
    between = symmetrize((offsets * class_sizes) @ offsets.T)

    gap = np.linalg.norm(total - (between + within))
    if gap > _SPLIT_TOL * max(np.linalg.norm(total), 1.0):
        raise ValueError(
            f"scatter split failed its consistency check: |T-(B+W)| = {gap:g}"
        )
    return ScatterDecomposition(
        total=total,
        between=between,
        within=within,
        class_means=class_means,
        class_sizes=class_sizes,
        grand_mean=grand_mean,
    )


def population_scatter(model):
    """Model-level scatter analogues: (total, between, within).

    ``between`` weights squared mean offsets about the mixture mean by the
    mixing weights; ``within`` is the weighted average covariance; their
    sum is the mixture covariance (the population total).
    """
    means = np.stack([c.mean for c in model.components])
    w = model.weights
    grand = w @ means
    offsets = means - grand
    between = symmetrize((offsets.T * w) @ offsets)
    within = np.zeros_like(between)
    for wi, comp in zip(w, model.components):
        within += wi * comp.cov
    within = symmetrize(within)
    return symmetrize(between + within), between, within
