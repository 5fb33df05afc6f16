"""Gaussian mixture models: representation, density evaluation, MLE
classification, seeded sampling and parameter estimation, plus the two
synthetic-mixture generators used by the sweep harness.

All sampling is reproducible: a dataset is a pure function of the model
and a 64-bit seed.  Per-cluster draws use sub-streams seeded ``seed ^ l``
(``l`` the 1-based cluster label) so each cluster's points do not depend
on how many points other clusters received.
"""

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_triangular

from .linalg import cholesky_lower, symmetrize

__all__ = [
    "GaussianComponent",
    "MixtureModel",
    "LabeledDataset",
    "TwoDimConfig",
    "RandomMixtureConfig",
    "density",
    "log_density",
    "log_likelihood_ratio",
    "classify_mle",
    "sample",
    "sample_by_class",
    "estimate_from_labels",
    "generate_two_dim",
    "generate_random_mixture",
    "dataset_to_csv",
    "dataset_from_csv",
    "model_to_dict",
    "model_from_dict",
    "save_model",
    "load_model",
]

_LOG_2PI = float(np.log(2.0 * np.pi))


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GaussianComponent:
    """One mixture component: mean vector and SPD covariance matrix.

    The covariance is validated (and its lower Cholesky factor cached) at
    construction; a degenerate covariance raises
    ``NotPositiveDefiniteError``.
    """

    mean: np.ndarray
    cov: np.ndarray
    chol: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        if mean.ndim != 1 or mean.size < 1:
            raise ValueError(f"mean must be a 1-d vector, got shape {mean.shape}")
        cov = symmetrize(self.cov)
        if cov.shape != (mean.size, mean.size):
            raise ValueError(
                f"covariance shape {cov.shape} does not match mean dimension "
                f"{mean.size}"
            )
        chol = cholesky_lower(cov)
        object.__setattr__(self, "mean", _frozen(mean))
        object.__setattr__(self, "cov", _frozen(cov))
        object.__setattr__(self, "chol", _frozen(chol))

    @property
    def dim(self):
        return self.mean.size


@dataclass(frozen=True)
class MixtureModel:
    """A k-component Gaussian mixture with mixing weights."""

    components: tuple
    weights: np.ndarray

    def __post_init__(self):
        components = tuple(self.components)
        if not components:
            raise ValueError("a mixture needs at least one component")
        d = components[0].dim
        for comp in components:
            if comp.dim != d:
                raise ValueError("all components must share one dimension")
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (len(components),):
            raise ValueError(
                f"expected {len(components)} weights, got shape {w.shape}"
            )
        if np.any(w < 0):
            raise ValueError("mixing weights must be non-negative")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"mixing weights must sum to 1, got {w.sum()!r}")
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "weights", _frozen(w))

    @property
    def dim(self):
        return self.components[0].dim

    @property
    def n_components(self):
        return len(self.components)


@dataclass(frozen=True)
class LabeledDataset:
    """An (n, d) point matrix with known 1-based integer class labels."""

    points: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float)
        if points.ndim != 2 or points.shape[0] < 1:
            raise ValueError(
                f"points must be a non-empty (n, d) matrix, got shape "
                f"{points.shape}"
            )
        labels = np.asarray(self.labels)
        if labels.shape != (points.shape[0],):
            raise ValueError("labels must be one integer per point")
        if not np.issubdtype(labels.dtype, np.integer):
            as_int = labels.astype(np.int64)
            if np.any(as_int != labels):
                raise ValueError("labels must be integers")
            labels = as_int
        else:
            labels = labels.astype(np.int64)
        if labels.min() < 1:
            raise ValueError("labels must be 1-based positive integers")
        object.__setattr__(self, "points", _frozen(points))
        object.__setattr__(self, "labels", _frozen(labels))

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def dim(self):
        return self.points.shape[1]

    @property
    def n_classes(self):
        return int(self.labels.max())


# ---------------------------------------------------------------------------
# densities and classification
# ---------------------------------------------------------------------------


def log_density(component, x):
    """Log of the multivariate normal density of ``component`` at ``x``.

    ``x`` may be a single d-vector or an (n, d) matrix; the result is a
    scalar or an (n,) vector accordingly.  Evaluated through the cached
    Cholesky factor, so it stays finite far into the tails.
    """
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    pts = np.atleast_2d(x)
    if pts.shape[1] != component.dim:
        raise ValueError(
            f"point dimension {pts.shape[1]} does not match component "
            f"dimension {component.dim}"
        )
    z = solve_triangular(
        component.chol, (pts - component.mean).T, lower=True, check_finite=False
    )
    quad = np.einsum("ij,ij->j", z, z)
    log_det = 2.0 * float(np.sum(np.log(np.diag(component.chol))))
    out = -0.5 * (component.dim * _LOG_2PI + log_det + quad)
    return float(out[0]) if single else out


def density(component, x):
    """Multivariate normal density of ``component`` at ``x`` (see log_density)."""
    return np.exp(log_density(component, x))


def log_likelihood_ratio(c1, c2, x):
    """log f2(x) - log f1(x), computed in log space (no tail underflow)."""
    return log_density(c2, x) - log_density(c1, x)


def _log_posterior_matrix(model, pts):
    """(k, n) matrix of log(pi_l) + log f_l(x_i); -inf rows for zero weights."""
    with np.errstate(divide="ignore"):
        log_w = np.log(model.weights)
    return np.stack(
        [log_w[i] + log_density(comp, pts) for i, comp in enumerate(model.components)]
    )


def classify_mle(model, x):
    """MLE class label(s) for ``x``: argmax_l pi_l f_l(x), ties to lowest l.

    Returns an int for a single point, an (n,) int array for a matrix.
    """
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    scores = _log_posterior_matrix(model, np.atleast_2d(x))
    labels = np.argmax(scores, axis=0) + 1
    return int(labels[0]) if single else labels


# ---------------------------------------------------------------------------
# sampling and estimation
# ---------------------------------------------------------------------------


def _cluster_rng(seed, label):
    # Sub-stream per cluster: independent of the other clusters' sizes.
    return np.random.default_rng(int(seed) ^ int(label))


def sample(model, n, seed):
    """Draw ``n`` labeled points from the mixture, reproducibly.

    Labels are drawn from the mixing weights using the stream seeded with
    ``seed``; each cluster's offsets are ``G_l z`` with ``G_l`` the
    covariance Cholesky factor and ``z`` standard normal from the
    sub-stream seeded ``seed ^ l``.
    """
    n = int(n)
    if n < 1:
        raise ValueError("sample size must be at least 1")
    k, d = model.n_components, model.dim
    rng = np.random.default_rng(int(seed))
    u = rng.random(n)
    edges = np.cumsum(model.weights)
    labels = np.minimum(np.searchsorted(edges, u, side="right"), k - 1) + 1
    points = np.empty((n, d))
    for lbl, comp in enumerate(model.components, start=1):
        idx = np.flatnonzero(labels == lbl)
        if idx.size == 0:
            continue
        z = _cluster_rng(seed, lbl).standard_normal((idx.size, d))
        points[idx] = comp.mean + z @ comp.chol.T
    return LabeledDataset(points=points, labels=labels)


def sample_by_class(model, sizes, seed):
    """Draw exactly ``sizes[l-1]`` points from component ``l``, reproducibly.

    Rows are grouped by cluster (all of cluster 1 first).  Uses the same
    per-cluster sub-streams as :func:`sample`.
    """
    sizes = [int(s) for s in sizes]
    if len(sizes) != model.n_components:
        raise ValueError("need one size per component")
    if any(s < 1 for s in sizes):
        raise ValueError("class sizes must be positive")
    d = model.dim
    blocks = []
    for lbl, (comp, n_l) in enumerate(zip(model.components, sizes), start=1):
        z = _cluster_rng(seed, lbl).standard_normal((n_l, d))
        blocks.append(comp.mean + z @ comp.chol.T)
    labels = np.repeat(np.arange(1, len(sizes) + 1), sizes)
    return LabeledDataset(points=np.vstack(blocks), labels=labels)


def estimate_from_labels(data):
    """Maximum-likelihood mixture estimate from a labeled dataset.

    Per class: sample mean, sample covariance with divisor ``n_l`` (the
    MLE, not ``n_l - 1``), and weight ``n_l / n``.  Every class ``1..k``
    (``k`` the largest label) must have at least ``d + 1`` members.

    Raises
    ------
    ValueError
        If some class has fewer than ``d + 1`` members.
    NotPositiveDefiniteError
        If a class sample covariance is singular.
    """
    k = data.n_classes
    n, d = data.points.shape
    components = []
    weights = np.empty(k)
    for lbl in range(1, k + 1):
        rows = data.points[data.labels == lbl]
        if rows.shape[0] < d + 1:
            raise ValueError(
                f"class {lbl} has {rows.shape[0]} members; need at least "
                f"{d + 1} to estimate a full-rank covariance"
            )
        mean = rows.mean(axis=0)
        centered = rows - mean
        cov = centered.T @ centered / rows.shape[0]
        components.append(GaussianComponent(mean=mean, cov=cov))
        weights[lbl - 1] = rows.shape[0] / n
    return MixtureModel(components=tuple(components), weights=weights)


# ---------------------------------------------------------------------------
# synthetic-mixture generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoDimConfig:
    """Parameters of the controlled two-dimensional mixture generator.

    ``radius`` places the cluster centers on a circle around the origin
    (between-cluster distance); ``dispersion`` is the leading covariance
    eigenvalue (within-cluster spread); ``axis_ratio`` in (0, 1] the ratio
    of the second eigenvalue to the first; ``rotation`` the default
    rotation angle in radians applied to every cluster.
    """

    radius: float
    rotation: float
    dispersion: float
    axis_ratio: float
    n_clusters: int
    sizes: tuple

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be non-negative")
        if self.dispersion <= 0:
            raise ValueError("dispersion must be positive")
        if not 0 < self.axis_ratio <= 1:
            raise ValueError("axis_ratio must lie in (0, 1]")
        if self.n_clusters < 2:
            raise ValueError("need at least 2 clusters")
        sizes = tuple(int(s) for s in self.sizes)
        if len(sizes) != self.n_clusters or any(s < 1 for s in sizes):
            raise ValueError("sizes must list one positive count per cluster")
        object.__setattr__(self, "sizes", sizes)


def rotation_matrix(angle):
    """2x2 counter-clockwise rotation matrix."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def circle_means(radius, k):
    """(k, 2) cluster centers (r sin((l-1) 2pi/k), r cos((l-1) 2pi/k))."""
    angles = np.arange(k) * (2.0 * np.pi / k)
    return radius * np.column_stack([np.sin(angles), np.cos(angles)])


def rotated_covariance(leading, ratio, angle):
    """2x2 covariance with eigenvalues (leading, ratio*leading), rotated."""
    r = rotation_matrix(angle)
    return symmetrize(r @ np.diag([leading, ratio * leading]) @ r.T)


def generate_two_dim(config, alphas=None, seed=0):
    """Build a 2-d mixture on the circle and sample it class by class.

    Cluster ``l`` gets center ``circle_means(radius, k)[l-1]`` and
    covariance ``R(alpha_l) diag(dispersion, axis_ratio * dispersion)
    R(alpha_l)^T``.  ``alphas`` gives one rotation angle per cluster and
    defaults to ``config.rotation`` for all of them.

    Returns
    -------
    (MixtureModel, LabeledDataset)
        Model weights are proportional to ``config.sizes``.
    """
    k = config.n_clusters
    if alphas is None:
        alphas = [config.rotation] * k
    alphas = [float(a) for a in alphas]
    if len(alphas) != k:
        raise ValueError(f"need {k} rotation angles, got {len(alphas)}")
    means = circle_means(config.radius, k)
    components = tuple(
        GaussianComponent(
            mean=means[i],
            cov=rotated_covariance(config.dispersion, config.axis_ratio, alphas[i]),
        )
        for i in range(k)
    )
    weights = np.asarray(config.sizes, dtype=float) / sum(config.sizes)
    model = MixtureModel(components=components, weights=weights)
    data = sample_by_class(model, config.sizes, seed)
    return model, data


@dataclass(frozen=True)
class RandomMixtureConfig:
    """Parameters of the random multi-dimensional mixture generator."""

    dim: int
    n_clusters: int
    seed: int
    eigenvalue_range: tuple

    def __post_init__(self):
        if self.n_clusters < 2:
            raise ValueError("need at least 2 clusters")
        if self.dim <= self.n_clusters - 1:
            raise ValueError(
                "dimension must exceed n_clusters - 1 "
                f"(got dim={self.dim}, n_clusters={self.n_clusters})"
            )
        lo, hi = (float(v) for v in self.eigenvalue_range)
        if not 0 < lo <= hi:
            raise ValueError("eigenvalue_range must satisfy 0 < lo <= hi")
        object.__setattr__(self, "eigenvalue_range", (lo, hi))


def random_orthogonal(dim, rng):
    """Random orthogonal matrix: QR of an iid-normal matrix, sign-fixed."""
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


def random_covariances(dim, k, eigenvalue_range, rng):
    """k random SPD matrices Q diag(w) Q^T, spectra uniform in the range."""
    lo, hi = eigenvalue_range
    covs = []
    for _ in range(k):
        q = random_orthogonal(dim, rng)
        w = rng.uniform(lo, hi, size=dim)
        covs.append(symmetrize((q * w) @ q.T))
    return covs


def random_means(dim, k, rng):
    """k mean vectors, each coordinate rescaled affinely onto [-3 sqrt(d), 3 sqrt(d)]."""
    raw = rng.random((k, dim))
    half = 3.0 * np.sqrt(dim)
    lo = raw.min(axis=0)
    span = raw.max(axis=0) - lo
    span = np.where(span > 0, span, 1.0)
    return -half + (raw - lo) * (2.0 * half / span)


def generate_random_mixture(config):
    """Equal-weight mixture with random orientations and spectra.

    Covariances are ``Q diag(w) Q^T`` with ``Q`` random orthogonal and
    ``w`` uniform in ``config.eigenvalue_range``; means are uniform draws
    rescaled per coordinate to ``[-3 sqrt(d), 3 sqrt(d)]``.  Deterministic
    given ``config.seed``.
    """
    rng = np.random.default_rng(int(config.seed))
    covs = random_covariances(
        config.dim, config.n_clusters, config.eigenvalue_range, rng
    )
    means = random_means(config.dim, config.n_clusters, rng)
    components = tuple(
        GaussianComponent(mean=means[i], cov=covs[i])
        for i in range(config.n_clusters)
    )
    weights = np.full(config.n_clusters, 1.0 / config.n_clusters)
    return MixtureModel(components=components, weights=weights)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def dataset_to_csv(data, path):
    """Write ``x1,...,xd,label`` rows; floats at 17 significant digits, LF."""
    d = data.dim
    header = ",".join([f"x{i + 1}" for i in range(d)] + ["label"])
    lines = [header]
    for row, lbl in zip(data.points, data.labels):
        lines.append(",".join(f"{v:.17g}" for v in row) + f",{lbl}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def dataset_from_csv(path):
    """Read a dataset written by :func:`dataset_to_csv`."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line.strip() for line in fh if line.strip()]
    if len(lines) < 2:
        raise ValueError(f"{path}: expected a header row and at least one point")
    header = lines[0].split(",")
    if header[-1] != "label" or not header[0].startswith("x"):
        raise ValueError(f"{path}: unexpected header {lines[0]!r}")
    d = len(header) - 1
    points = np.empty((len(lines) - 1, d))
    labels = np.empty(len(lines) - 1, dtype=np.int64)
    for i, line in enumerate(lines[1:]):
        parts = line.split(",")
        if len(parts) != d + 1:
            raise ValueError(f"{path}: row {i + 2} has {len(parts)} fields, want {d + 1}")
        points[i] = [float(p) for p in parts[:d]]
        labels[i] = int(parts[d])
    return LabeledDataset(points=points, labels=labels)


def model_to_dict(model):
    """JSON-ready dict with keys ``weights`` and ``components``."""
    return {
        "weights": [float(w) for w in model.weights],
        "components": [
            {
                "mean": [float(v) for v in comp.mean],
                "cov": [[float(v) for v in row] for row in comp.cov],
            }
            for comp in model.components
        ],
    }


def model_from_dict(payload):
    """Inverse of :func:`model_to_dict`."""
    try:
        components = tuple(
            GaussianComponent(mean=np.asarray(c["mean"], dtype=float),
                              cov=np.asarray(c["cov"], dtype=float))
            for c in payload["components"]
        )
        weights = np.asarray(payload["weights"], dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed mixture description: {exc}") from exc
    return MixtureModel(components=components, weights=weights)


def save_model(model, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(model_to_dict(model), fh, indent=2)
        fh.write("\n")


def load_model(path):
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))
