"""How much do two Gaussian clusters overlap?

For two univariate clusters with equal variance the misclassification
rate of the maximum-likelihood rule has a closed form: Phi(-gap / 2).
That makes the 1-D case a good sanity check for the two generic
estimators, midpoint quadrature and Monte Carlo, before trusting them
where no closed form exists.
"""

import numpy as np
from scipy.special import ndtr

from mixsep import (
    GaussianComponent,
    MixtureModel,
    mle_error_mc,
    mle_error_quadrature,
)


def pair(gap):
    return MixtureModel(
        components=(
            GaussianComponent(mean=[0.0], cov=[[1.0]]),
            GaussianComponent(mean=[gap], cov=[[1.0]]),
        ),
        weights=[0.5, 0.5],
    )


print(f"{'gap':>5} {'analytic':>10} {'quadrature':>11} {'MC':>9} {'MC 3*SE':>9}")
for gap in (0.5, 1.0, 2.0, 3.0, 4.0):
    model = pair(gap)
    analytic = ndtr(-gap / 2.0)
    quad = mle_error_quadrature(model, 2000)
    mc = mle_error_mc(model, 200_000, seed=1)
    print(
        f"{gap:5.1f} {analytic:10.6f} {quad.value:11.6f} "
        f"{mc.value:9.6f} {3 * mc.std_error:9.6f}"
    )

print()
print("Quadrature tracks the analytic value to ~1e-6; the MC estimate")
print("lands within its own three-sigma band.  Touching clusters (gap 0)")
print("would sit at the ceiling: half of all points misclassified.")

overlapped = pair(0.0)
print(f"gap 0 quadrature: {mle_error_quadrature(overlapped, 2000).value:.6f}")
