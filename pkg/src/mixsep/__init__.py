"""Overlap and distinctness measures for Gaussian mixture components.

Quantifies how separated the components of a Gaussian mixture are:
the misclassification rate of the maximum-likelihood classifier
(Monte Carlo and quadrature estimators), the minimax-optimal linear
separator between two clusters, the energy distance between labeled
clusters, and eigenvalue coefficients of the Fisher discriminant
problem.  A sweep harness evaluates all of them over parameter grids
and writes CSV tables and SVG charts.
"""

from .errors import (
    ConvergenceError,
    EigenConvergenceError,
    NotPositiveDefiniteError,
    NumericalError,
    ResidualCheckError,
    SingularMatrixError,
)
from .fisher import (
    FisherSolution,
    fisher_criterion,
    fisher_eigen,
    fisher_eigen_from_matrices,
)
from .linalg import (
    SpectralDecomposition,
    cholesky_lower,
    spd_solve,
    sym_eig,
    symmetrize,
)
from .mixture import (
    GaussianComponent,
    LabeledDataset,
    MixtureModel,
    RandomMixtureConfig,
    TwoDimConfig,
    classify_mle,
    dataset_from_csv,
    dataset_to_csv,
    density,
    estimate_from_labels,
    generate_random_mixture,
    generate_two_dim,
    load_model,
    log_density,
    log_likelihood_ratio,
    model_from_dict,
    model_to_dict,
    sample,
    sample_by_class,
    save_model,
)
from .overlap import (
    OverlapEstimate,
    e_distance,
    e_distance_between,
    mle_error_equal_cov,
    mle_error_mc,
    mle_error_quadrature,
)
from .scatter import ScatterDecomposition, population_scatter, scatter_decomposition
from .separator import (
    SeparatorSolution,
    best_linear_separator,
    misclassification_probabilities,
    separator_criterion,
)
from .svgchart import emit_chart
from .sweep import (
    SweepConfig,
    SweepRow,
    emit_csv,
    load_rows,
    load_sweep_config,
    mix_seed,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "EigenConvergenceError",
    "NotPositiveDefiniteError",
    "NumericalError",
    "ResidualCheckError",
    "SingularMatrixError",
    "FisherSolution",
    "fisher_criterion",
    "fisher_eigen",
    "fisher_eigen_from_matrices",
    "SpectralDecomposition",
    "cholesky_lower",
    "spd_solve",
    "sym_eig",
    "symmetrize",
    "GaussianComponent",
    "LabeledDataset",
    "MixtureModel",
    "RandomMixtureConfig",
    "TwoDimConfig",
    "classify_mle",
    "dataset_from_csv",
    "dataset_to_csv",
    "density",
    "estimate_from_labels",
    "generate_random_mixture",
    "generate_two_dim",
    "load_model",
    "log_density",
    "log_likelihood_ratio",
    "model_from_dict",
    "model_to_dict",
    "sample",
    "sample_by_class",
    "save_model",
    "OverlapEstimate",
    "e_distance",
    "e_distance_between",
    "mle_error_equal_cov",
    "mle_error_mc",
    "mle_error_quadrature",
    "ScatterDecomposition",
    "population_scatter",
    "scatter_decomposition",
    "SeparatorSolution",
    "best_linear_separator",
    "misclassification_probabilities",
    "separator_criterion",
    "emit_chart",
    "SweepConfig",
    "SweepRow",
    "emit_csv",
    "load_rows",
    "load_sweep_config",
    "mix_seed",
    "run_sweep",
    "__version__",
]
