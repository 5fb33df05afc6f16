"""Parameter-sweep harness.

Runs a grid of mixture configurations (cluster orientations in 2-d,
random position/shape sets in higher dimensions) against a swept
parameter (between-cluster distance or within-cluster dispersion),
computing every applicable overlap and distinctness measure per sweep
point, and writes the results as CSV rows.

Determinism contract: every cell derives its own seeds from the base
seed and the cell coordinates through a 64-bit mixing function, so
results do not depend on evaluation order or worker count.
"""

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import fisher, mixture, overlap, scatter, separator
from .errors import NumericalError
from .linalg import symmetrize

__all__ = [
    "FAMILIES",
    "SweepConfig",
    "SweepRow",
    "mix_seed",
    "run_sweep",
    "emit_csv",
    "load_rows",
    "load_sweep_config",
    "sweep_axis_label",
]

# family name -> (id used in seed derivation, grid kind)
FAMILIES = {
    "distance-2d": (1, "2d"),
    "dispersion-both-2d": (2, "2d"),
    "dispersion-first-2d": (3, "2d"),
    "dispersion-second-2d": (4, "2d"),
    "spherical-2d": (5, "2d"),
    "distance-nd": (6, "nd"),
    "dispersion-nd": (7, "nd"),
}

_AXIS_LABELS = {
    "distance-2d": "center distance (radius)",
    "dispersion-both-2d": "dispersion (both eigenvalues)",
    "dispersion-first-2d": "dispersion (first eigenvalue)",
    "dispersion-second-2d": "dispersion (second eigenvalue)",
    "spherical-2d": "dispersion (spherical)",
    "distance-nd": "mean scale factor",
    "dispersion-nd": "covariance scale factor",
}

_MASK64 = (1 << 64) - 1

# Tags that keep the derived streams for different purposes disjoint.
_TAG_DATA = 0
_TAG_MC = 1
_TAG_MEANS = 101
_TAG_COVS = 102


def _splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def mix_seed(base, *parts):
    """Fold integer coordinates into a 64-bit seed, order-sensitively.

    Chained splitmix64 finalizers: collisions between nearby cells are
    practically impossible and the result is independent of evaluation
    order by construction.
    """
    state = int(base) & _MASK64
    for part in parts:
        state = _splitmix64(state ^ (int(part) & _MASK64))
    return state


def sweep_axis_label(family):
    """Human-readable name of the swept parameter for chart axes."""
    return _AXIS_LABELS[family]


_FULL_ANGLE_GRID = tuple((i, j) for i in range(1, 7) for j in range(1, 7))


@dataclass(frozen=True)
class SweepConfig:
    """Everything needed to run one sweep.

    ``base`` is a :class:`TwoDimConfig` for the 2-d families (which
    require exactly two clusters) or a :class:`RandomMixtureConfig` for
    the nd families.  ``angle_grid`` lists (i, j) pairs meaning cluster
    rotations (i pi/6, j pi/6); it defaults to the full 6x6 grid, or to
    the single cell (1, 1) for the rotation-invariant spherical family.
    nd grids are the product of ``mean_sets`` x ``cov_sets`` random
    position and shape draws.
    """

    family: str
    base: object
    sweep_values: tuple
    seed: int
    n_points: int = 500
    mc_samples: int = 100_000
    quad_cells: int = 200
    angle_grid: tuple | None = None
    mean_sets: int = 3
    cov_sets: int = 3
    separator_prec: float = 1e-9

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(
                f"unknown family {self.family!r}; choose from "
                f"{sorted(FAMILIES)}"
            )
        kind = FAMILIES[self.family][1]
        values = tuple(float(v) for v in self.sweep_values)
        if len(values) < 1:
            raise ValueError("sweep_values must be non-empty")
        diffs = np.diff(values)
        if len(values) > 1 and not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise ValueError("sweep_values must be strictly monotone")
        object.__setattr__(self, "sweep_values", values)

        if kind == "2d":
            if not isinstance(self.base, mixture.TwoDimConfig):
                raise ValueError(f"family {self.family} needs a TwoDimConfig base")
            if self.base.n_clusters != 2:
                raise ValueError("2-d sweep families use exactly 2 clusters")
            dim = 2
            if self.angle_grid is None:
                grid = (
                    ((1, 1),) if self.family == "spherical-2d" else _FULL_ANGLE_GRID
                )
            else:
                grid = tuple((int(a), int(b)) for a, b in self.angle_grid)
                if not grid:
                    raise ValueError("angle_grid must be non-empty")
                for a, b in grid:
                    if not (1 <= a <= 6 and 1 <= b <= 6):
                        raise ValueError(
                            f"angle_grid indices must lie in 1..6, got ({a}, {b})"
                        )
            object.__setattr__(self, "angle_grid", grid)
        else:
            if not isinstance(self.base, mixture.RandomMixtureConfig):
                raise ValueError(
                    f"family {self.family} needs a RandomMixtureConfig base"
                )
            if self.angle_grid is not None:
                raise ValueError("angle_grid applies to 2-d families only")
            dim = self.base.dim
            if self.mean_sets < 1 or self.cov_sets < 1:
                raise ValueError("mean_sets and cov_sets must be positive")

        if self.n_points < 10 * dim:
            raise ValueError(
                f"n_points must be at least 10 x dim = {10 * dim} per class"
            )
        if self.mc_samples < 1000:
            raise ValueError("mc_samples must be at least 1000")
        if self.quad_cells < 200:
            raise ValueError("quad_cells must be at least 200")
        if not 0 < self.separator_prec < 1:
            raise ValueError("separator_prec must lie in (0, 1)")

    @property
    def cells(self):
        """Grid cells in output order: sorted (a, b) identifier pairs."""
        if FAMILIES[self.family][1] == "2d":
            return tuple(sorted(self.angle_grid))
        return tuple(
            (a, b)
            for a in range(1, self.mean_sets + 1)
            for b in range(1, self.cov_sets + 1)
        )


@dataclass(frozen=True)
class SweepRow:
    """One measured grid point.

    Measures that do not apply (quadrature beyond 2-d, the linear
    separator beyond two clusters) or that failed are None, with the
    explanation collected in ``reason``.  ``alpha1``/``alpha2`` are the
    cluster rotation angles (None for nd families).
    """

    family: str
    cell_a: int
    cell_b: int
    alpha1: float | None
    alpha2: float | None
    sweep_value: float
    distinctness_exact: float | None
    distinctness_mc: float | None
    distinctness_linear: float | None
    lambda_avg: float | None
    lambda_min: float | None
    e_dist: float | None
    reason: str


def _eigen_pair(family, base, value):
    """Covariance eigenvalues (first, second) for a 2-d family at ``value``."""
    lam, q = base.dispersion, base.axis_ratio
    if family == "distance-2d":
        return lam, q * lam
    if family == "dispersion-both-2d":
        return value, q * value
    if family == "dispersion-first-2d":
        return value, q * lam
    if family == "dispersion-second-2d":
        return lam, q * value
    if family == "spherical-2d":
        return value, value
    raise ValueError(f"not a 2-d family: {family}")


def _build_2d_model(config, cell, value):
    base = config.base
    radius = value if config.family == "distance-2d" else base.radius
    alphas = (cell[0] * np.pi / 6.0, cell[1] * np.pi / 6.0)
    e1, e2 = _eigen_pair(config.family, base, value)
    if min(e1, e2) <= 0:
        raise ValueError(f"sweep value {value} gives a non-positive eigenvalue")
    means = mixture.circle_means(radius, 2)
    covs = []
    for angle in alphas:
        rot = mixture.rotation_matrix(angle)
        covs.append(symmetrize(rot @ np.diag([e1, e2]) @ rot.T))
    components = tuple(
        mixture.GaussianComponent(mean=means[i], cov=covs[i]) for i in range(2)
    )
    model = mixture.MixtureModel(
        components=components, weights=np.array([0.5, 0.5])
    )
    return model, alphas


def _build_nd_model(config, cell, value):
    base = config.base
    k, d = base.n_clusters, base.dim
    # Position and shape draws depend only on the base seed and the set
    # index, so the same cell means the same configuration across
    # families and sweep values.
    mean_rng = np.random.default_rng(mix_seed(config.seed, _TAG_MEANS, cell[0]))
    cov_rng = np.random.default_rng(mix_seed(config.seed, _TAG_COVS, cell[1]))
    means = mixture.random_means(d, k, mean_rng)
    covs = mixture.random_covariances(d, k, base.eigenvalue_range, cov_rng)
    if config.family == "distance-nd":
        grand = means.mean(axis=0)
        means = grand + value * (means - grand)
    elif config.family == "dispersion-nd":
        if value <= 0:
            raise ValueError(f"covariance scale must be positive, got {value}")
        covs = [value * c for c in covs]
    else:
        raise ValueError(f"not an nd family: {config.family}")
    components = tuple(
        mixture.GaussianComponent(mean=means[i], cov=covs[i]) for i in range(k)
    )
    weights = np.full(k, 1.0 / k)
    return mixture.MixtureModel(components=components, weights=weights)


def _mean_pairwise_e_distance(data):
    k = data.n_classes
    total, pairs = 0.0, 0
    for a in range(1, k + 1):
        for b in range(a + 1, k + 1):
            total += overlap.e_distance(data, a, b)
            pairs += 1
    return total / pairs


def _clamp_unit(x):
    return min(max(float(x), 0.0), 1.0)


def _compute_row(config, cell, sweep_index, model_exact):
    family = config.family
    fam_id, kind = FAMILIES[family]
    value = config.sweep_values[sweep_index]
    reasons = []

    if kind == "2d":
        true_model, alphas = _build_2d_model(config, cell, value)
        alpha1, alpha2 = alphas
    else:
        true_model = _build_nd_model(config, cell, value)
        alpha1 = alpha2 = None
    k, d = true_model.n_components, true_model.dim

    data_seed = mix_seed(config.seed, fam_id, cell[0], cell[1], sweep_index, _TAG_DATA)
    mc_seed = mix_seed(config.seed, fam_id, cell[0], cell[1], sweep_index, _TAG_MC)
    data = mixture.sample_by_class(true_model, (config.n_points,) * k, data_seed)

    if model_exact:
        measure_model = true_model
    else:
        try:
            measure_model = mixture.estimate_from_labels(data)
        except (ValueError, NumericalError) as exc:
            measure_model = None
            reasons.append(f"estimate: {exc}")

    exact = mc = linear = lam_avg = lam_min = None
    if measure_model is None:
        reasons.append("model measures skipped")
    else:
        if d <= 2:
            try:
                est = overlap.mle_error_quadrature(measure_model, config.quad_cells)
                exact = _clamp_unit(1.0 - est.value)
            except (ValueError, NumericalError) as exc:
                reasons.append(f"quadrature: {exc}")
        else:
            reasons.append("quadrature: needs dimension <= 2")
        try:
            est = overlap.mle_error_mc(measure_model, config.mc_samples, mc_seed)
            mc = _clamp_unit(1.0 - est.value)
        except (ValueError, NumericalError) as exc:
            reasons.append(f"mc: {exc}")
        if k == 2:
            try:
                sol = separator.best_linear_separator(
                    measure_model.components[0],
                    measure_model.components[1],
                    prec=config.separator_prec,
                )
                linear = _clamp_unit(1.0 - sol.p_minmax)
            except (ValueError, NumericalError) as exc:
                reasons.append(f"separator: {exc}")
        else:
            reasons.append("separator: needs exactly 2 clusters")
        try:
            total, between, _ = scatter.population_scatter(measure_model)
            sol = fisher.fisher_eigen_from_matrices(total, between, k)
            lam_avg = _clamp_unit(sol.lambda_avg)
            lam_min = _clamp_unit(sol.lambda_min)
        except (ValueError, NumericalError) as exc:
            reasons.append(f"fisher: {exc}")

    e_dist = None
    try:
        e_dist = _mean_pairwise_e_distance(data)
    except (ValueError, NumericalError) as exc:
        reasons.append(f"e_dist: {exc}")

    return SweepRow(
        family=family,
        cell_a=cell[0],
        cell_b=cell[1],
        alpha1=alpha1,
        alpha2=alpha2,
        sweep_value=value,
        distinctness_exact=exact,
        distinctness_mc=mc,
        distinctness_linear=linear,
        lambda_avg=lam_avg,
        lambda_min=lam_min,
        e_dist=e_dist,
        reason="; ".join(reasons),
    )


def _row_task(args):
    return _compute_row(*args)


def run_sweep(config, model_exact=False, jobs=1):
    """Evaluate every (cell, sweep value) pair of the configured grid.

    Rows come back sorted by cell then sweep index, regardless of
    ``jobs``; per-cell seeding makes the values themselves independent
    of scheduling.  Failed or inapplicable measures are None in their
    row, never an exception.
    """
    tasks = [
        (config, cell, si, model_exact)
        for cell in config.cells
        for si in range(len(config.sweep_values))
    ]
    jobs = int(jobs)
    if jobs <= 1 or len(tasks) == 1:
        return [_row_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunk = max(1, len(tasks) // (4 * jobs))
        return list(pool.map(_row_task, tasks, chunksize=chunk))


# ---------------------------------------------------------------------------
# CSV round trip
# ---------------------------------------------------------------------------

CSV_FIELDS = (
    "family",
    "cell_a",
    "cell_b",
    "alpha1",
    "alpha2",
    "sweep_value",
    "distinctness_exact",
    "distinctness_mc",
    "distinctness_linear",
    "lambda_avg",
    "lambda_min",
    "e_dist",
    "reason",
)

_FLOAT_FIELDS = CSV_FIELDS[3:12]


def _format_cell(name, value):
    if value is None:
        return ""
    if name in _FLOAT_FIELDS:
        return f"{value:.17g}"
    return str(value)


def emit_csv(rows, path):
    """Write rows as UTF-8 CSV with LF endings and round-trip floats."""
    if not rows:
        raise ValueError("no rows to write")
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_FIELDS)
            for row in rows:
                writer.writerow(
                    _format_cell(name, getattr(row, name)) for name in CSV_FIELDS
                )
    except OSError as exc:
        raise OSError(f"cannot write sweep CSV to {path}: {exc}") from exc


def load_rows(path):
    """Read back a CSV written by :func:`emit_csv`."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != list(CSV_FIELDS):
                raise ValueError(f"{path}: unexpected header {header!r}")
            rows = []
            for parts in reader:
                if len(parts) != len(CSV_FIELDS):
                    raise ValueError(
                        f"{path}: row {reader.line_num} has {len(parts)} fields"
                    )
                rec = dict(zip(CSV_FIELDS, parts))
                rows.append(
                    SweepRow(
                        family=rec["family"],
                        cell_a=int(rec["cell_a"]),
                        cell_b=int(rec["cell_b"]),
                        reason=rec["reason"],
                        **{
                            name: (float(rec[name]) if rec[name] else None)
                            for name in _FLOAT_FIELDS
                        },
                    )
                )
            return rows
    except OSError as exc:
        raise OSError(f"cannot read sweep CSV from {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# config files
# ---------------------------------------------------------------------------

_BASE_2D_KEYS = {"radius", "rotation", "dispersion", "axis_ratio", "n_clusters", "sizes"}
_BASE_ND_KEYS = {"dim", "n_clusters", "seed", "eigenvalue_range"}
_SAMPLE_KEYS = {"n_points", "mc", "quad"}


def _require_keys(mapping, allowed, where, required=()):
    extra = set(mapping) - set(allowed)
    if extra:
        raise ValueError(f"{where}: unknown keys {sorted(extra)}")
    missing = set(required) - set(mapping)
    if missing:
        raise ValueError(f"{where}: missing keys {sorted(missing)}")


def _parse_base(family, payload):
    if not isinstance(payload, dict):
        raise ValueError("'base' must be an object")
    if FAMILIES[family][1] == "2d":
        _require_keys(
            payload, _BASE_2D_KEYS, "base",
            required={"radius", "dispersion", "axis_ratio"},
        )
        n_clusters = int(payload.get("n_clusters", 2))
        sizes = payload.get("sizes", [1] * n_clusters)
        return mixture.TwoDimConfig(
            radius=float(payload["radius"]),
            rotation=float(payload.get("rotation", 0.0)),
            dispersion=float(payload["dispersion"]),
            axis_ratio=float(payload["axis_ratio"]),
            n_clusters=n_clusters,
            sizes=tuple(int(s) for s in sizes),
        )
    _require_keys(payload, _BASE_ND_KEYS, "base", required=_BASE_ND_KEYS)
    return mixture.RandomMixtureConfig(
        dim=int(payload["dim"]),
        n_clusters=int(payload["n_clusters"]),
        seed=int(payload["seed"]),
        eigenvalue_range=tuple(float(v) for v in payload["eigenvalue_range"]),
    )


def _parse_sweep_values(payload):
    if isinstance(payload, list):
        return tuple(float(v) for v in payload)
    if isinstance(payload, dict):
        _require_keys(payload, {"start", "stop", "count"}, "sweep",
                      required={"start", "stop", "count"})
        count = int(payload["count"])
        if count < 1:
            raise ValueError("sweep: count must be positive")
        return tuple(
            np.linspace(float(payload["start"]), float(payload["stop"]), count)
        )
    raise ValueError("'sweep' must be a list of values or {start, stop, count}")


def load_sweep_config(path):
    """Parse a JSON sweep description into a :class:`SweepConfig`.

    Top-level keys: ``family``, ``base``, ``sweep``, ``seed``, optional
    ``samples`` ({n_points, mc, quad}), optional ``grid`` (angle pairs
    for 2-d families, {mean_sets, cov_sets} for nd families), optional
    ``separator_prec``.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise OSError(f"cannot read sweep config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    _require_keys(
        payload,
        {"family", "base", "sweep", "seed", "samples", "grid", "separator_prec"},
        path,
        required={"family", "base", "sweep", "seed"},
    )
    family = payload["family"]
    if family not in FAMILIES:
        raise ValueError(f"{path}: unknown family {family!r}")
    kwargs = {
        "family": family,
        "base": _parse_base(family, payload["base"]),
        "sweep_values": _parse_sweep_values(payload["sweep"]),
        "seed": int(payload["seed"]),
    }
    samples = payload.get("samples", {})
    if not isinstance(samples, dict):
        raise ValueError("'samples' must be an object")
    _require_keys(samples, _SAMPLE_KEYS, "samples")
    if "n_points" in samples:
        kwargs["n_points"] = int(samples["n_points"])
    if "mc" in samples:
        kwargs["mc_samples"] = int(samples["mc"])
    if "quad" in samples:
        kwargs["quad_cells"] = int(samples["quad"])
    if "separator_prec" in payload:
        kwargs["separator_prec"] = float(payload["separator_prec"])
    grid = payload.get("grid")
    if grid is not None:
        if FAMILIES[family][1] == "2d":
            if not isinstance(grid, list):
                raise ValueError("'grid' must list [i, j] angle pairs")
            kwargs["angle_grid"] = tuple(tuple(int(v) for v in pair) for pair in grid)
        else:
            if not isinstance(grid, dict):
                raise ValueError("'grid' must be {mean_sets, cov_sets}")
            _require_keys(grid, {"mean_sets", "cov_sets"}, "grid")
            if "mean_sets" in grid:
                kwargs["mean_sets"] = int(grid["mean_sets"])
            if "cov_sets" in grid:
                kwargs["cov_sets"] = int(grid["cov_sets"])
    return SweepConfig(**kwargs)


def with_seed(config, seed):
    """Copy of ``config`` with the base seed replaced."""
    return replace(config, seed=int(seed))
