"""Best linear separator of two Gaussian clusters in the minimax sense.

The separating rule is b . x <= c for cluster 1.  Among all
hyperplanes, the minimax-optimal one equalizes the two one-sided error
probabilities; its normal is b = (t S1 + (1 - t) S2)^(-1) (m2 - m1) for
the mixing scalar t in [0, 1] that balances the standardized margins.
``t`` is found by bisection on the balance criterion, which is monotone
in t.  Both misclassification probabilities then follow from the normal
tail function.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .errors import ConvergenceError
from .linalg import spd_solve

__all__ = [
    "SeparatorSolution",
    "separator_criterion",
    "best_linear_separator",
    "misclassification_probabilities",
]


@dataclass(frozen=True)
class SeparatorSolution:
    """Minimax separating hyperplane b . x = c between two clusters.

    ``margin1``/``margin2`` are the standardized distances from each
    cluster mean to the plane; at the optimum they agree and both error
    probabilities equal ``p_minmax``.
    """

    normal: np.ndarray
    threshold: float
    t: float
    margin1: float
    margin2: float
    p1: float
    p2: float
    p_minmax: float
    iterations: int


def separator_criterion(t, c1, c2):
    """Balance criterion at mixing scalar ``t``; returns (crit, b).

    crit = b^T [t^2 S1 - (1-t)^2 S2] b, the difference of the squared
    standardized margins, so its sign tells bisection which way to move.
    """
    mix = t * c1.cov + (1.0 - t) * c2.cov
    b = spd_solve(mix, c2.mean - c1.mean)
    crit = t * t * float(b @ c1.cov @ b) - (1.0 - t) ** 2 * float(b @ c2.cov @ b)
    return crit, b


def best_linear_separator(c1, c2, prec=1e-9, max_iter=200):
    """Minimax-optimal linear separator of two Gaussian components.

    Bisection on ``t`` starting at 0.5 with step 0.25, halving each
    round, until the balance criterion is within ``prec`` relative to
    b^T (S1 + S2) b.  Raises ``ConvergenceError`` if ``max_iter`` rounds
    do not get there, and ``ValueError`` for coincident means.
    """
    if c1.dim != c2.dim:
        raise ValueError("components must share one dimension")
    if np.array_equal(c1.mean, c2.mean):
        raise ValueError("cluster means coincide; no separating hyperplane")

    t, incr = 0.5, 0.25
    crit, b = separator_criterion(t, c1, c2)
    iterations = 1
    scale = float(b @ (c1.cov + c2.cov) @ b)
    while abs(crit) > prec * scale:
        if iterations >= max_iter:
            raise ConvergenceError(
                f"separator bisection did not converge in {max_iter} rounds "
                f"(criterion {crit:g}, tolerance {prec * scale:g})"
            )
        t = t - incr if crit > 0 else t + incr
        incr *= 0.5
        crit, b = separator_criterion(t, c1, c2)
        iterations += 1
        scale = float(b @ (c1.cov + c2.cov) @ b)

    q1 = float(b @ c1.cov @ b)
    q2 = float(b @ c2.cov @ b)
    c_from_1 = float(b @ c1.mean) + t * q1
    c_from_2 = float(b @ c2.mean) - (1.0 - t) * q2
    # The two threshold readings agree identically at the fixed point;
    # a mismatch means the solve itself went wrong.
    gap = abs(c_from_1 - c_from_2)
    if gap > 1e-6 * max(abs(c_from_1), abs(c_from_2), 1.0):
        raise ConvergenceError(
            f"threshold readings disagree: {c_from_1!r} vs {c_from_2!r}"
        )
    c = 0.5 * (c_from_1 + c_from_2)

    margin1 = t * np.sqrt(q1)
    margin2 = (1.0 - t) * np.sqrt(q2)
    p1 = 1.0 - float(ndtr(margin1))
    p2 = 1.0 - float(ndtr(margin2))
    return SeparatorSolution(
        normal=b,
        threshold=c,
        t=float(t),
        margin1=float(margin1),
        margin2=float(margin2),
        p1=p1,
        p2=p2,
        p_minmax=max(p1, p2),
        iterations=iterations,
    )


def misclassification_probabilities(b, c, c1, c2):
    """Error probabilities of the rule b . x <= c for two Gaussians.

    Returns (p1, p2): the chance a cluster-1 point lands on cluster 2's
    side, and vice versa.  Works for any hyperplane, optimal or not.
    """
    b = np.asarray(b, dtype=float)
    s1 = np.sqrt(float(b @ c1.cov @ b))
    s2 = np.sqrt(float(b @ c2.cov @ b))
    if s1 <= 0 or s2 <= 0:
        raise ValueError("normal vector has zero variance under a cluster")
    z1 = (c - float(b @ c1.mean)) / s1
    z2 = (float(b @ c2.mean) - c) / s2
    return 1.0 - float(ndtr(z1)), 1.0 - float(ndtr(z2))
