"""Acceptance checks: one test per numbered criterion, each printing a
single [PASS]/[FAIL] line (run with -s to see them).  Criteria with a
stated runtime budget assert their elapsed time as well.
"""

import time

import numpy as np
import pytest
from scipy.special import ndtr
from scipy.stats import spearmanr

from mixsep.cli import main as cli_main
from mixsep.fisher import fisher_eigen
from mixsep.linalg import cholesky_lower, spd_solve
from mixsep.mixture import (
    GaussianComponent,
    LabeledDataset,
    MixtureModel,
    RandomMixtureConfig,
    TwoDimConfig,
    density,
    random_covariances,
    random_means,
    sample_by_class,
)
from mixsep.overlap import (
    e_distance,
    mle_error_mc,
    mle_error_quadrature,
)
from mixsep.scatter import scatter_decomposition
from mixsep.separator import best_linear_separator
from mixsep.sweep import SweepConfig, emit_csv, run_sweep

SEED = 2024


def _criterion(num, desc, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {desc}"
    if detail:
        line += f" ({detail})"
    print("\n" + line)
    assert ok, line


def _pair_model_1d(delta):
    return MixtureModel(
        components=(
            GaussianComponent(mean=[0.0], cov=[[1.0]]),
            GaussianComponent(mean=[delta], cov=[[1.0]]),
        ),
        weights=[0.5, 0.5],
    )


def _base_2d():
    return TwoDimConfig(
        radius=3.0, rotation=0.0, dispersion=1.0, axis_ratio=0.5,
        n_clusters=2, sizes=(1, 1),
    )


def _cells(rows):
    out = {}
    for r in rows:
        out.setdefault((r.cell_a, r.cell_b), []).append(r)
    return out


# ---------------------------------------------------------------------------
# shared inputs
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def labeled_datasets():
    """100 random labeled datasets (d <= 10, k <= 4, about 50 d points)."""
    rng = np.random.default_rng(SEED)
    out = []
    for _ in range(100):
        d = int(rng.integers(1, 11))
        k = int(rng.integers(2, min(4, d + 1) + 1))
        means = random_means(d, k, rng)
        covs = random_covariances(d, k, (0.3, 3.0), rng)
        model = MixtureModel(
            components=tuple(
                GaussianComponent(mean=means[i], cov=covs[i]) for i in range(k)
            ),
            weights=np.full(k, 1.0 / k),
        )
        n = 50 * d
        sizes = [n // k + (1 if i < n % k else 0) for i in range(k)]
        out.append((sample_by_class(model, sizes, int(rng.integers(1 << 62))), k))
    return out


@pytest.fixture(scope="module")
def grid_sweeps():
    """Full 6x6 grid sweeps of the four 2-d families at default sizes."""
    start = time.perf_counter()
    rows = {}
    rows["distance-2d"] = run_sweep(SweepConfig(
        family="distance-2d", base=_base_2d(),
        sweep_values=tuple(np.linspace(0.5, 6.0, 11)), seed=SEED,
    ))
    for family in ("dispersion-both-2d", "dispersion-first-2d",
                   "dispersion-second-2d"):
        rows[family] = run_sweep(SweepConfig(
            family=family, base=_base_2d(),
            sweep_values=tuple(np.linspace(0.25, 4.0, 11)), seed=SEED,
        ))
    return {"rows": rows, "elapsed": time.perf_counter() - start}


@pytest.fixture(scope="module")
def nd_sweeps():
    """Distance and dispersion sweeps over 10 random 3D and 5D positions."""
    start = time.perf_counter()
    runs = []
    for dim in (3, 5):
        base = RandomMixtureConfig(dim=dim, n_clusters=3, seed=0,
                                   eigenvalue_range=(0.5, 2.0))
        disp_hi = {3: 8.0, 5: 24.0}[dim]
        for family, values in (
            ("distance-nd", np.linspace(0.25, 2.0, 11)),
            ("dispersion-nd", np.linspace(1.0, disp_hi, 11)),
        ):
            rows = run_sweep(SweepConfig(
                family=family, base=base, sweep_values=tuple(values),
                seed=SEED, mean_sets=10, cov_sets=1,
            ))
            runs.append((dim, family, rows))
    return {"runs": runs, "elapsed": time.perf_counter() - start}


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def test_criterion_01_equal_covariance_coincidence():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED)
    worst_closed = worst_quad = 0.0
    for i in range(50):
        d = int(rng.integers(1, 6))
        cov = random_covariances(d, 1, (0.5, 2.0), rng)[0]
        mu1 = rng.standard_normal(d)
        gap = rng.standard_normal(d) * 1.5
        while np.linalg.norm(gap) < 0.5:
            gap = rng.standard_normal(d) * 1.5
        c1 = GaussianComponent(mean=mu1, cov=cov)
        c2 = GaussianComponent(mean=mu1 + gap, cov=cov)
        sol = best_linear_separator(c1, c2)
        delta = float(np.sqrt(gap @ spd_solve(cov, gap)))
        closed = float(ndtr(-delta / 2.0))
        worst_closed = max(worst_closed, abs(sol.p_minmax - closed))
        # rotate to the 1D margin case and integrate there
        quad1d = mle_error_quadrature(_pair_model_1d(delta), 2000).value
        worst_quad = max(worst_quad, abs(sol.p_minmax - quad1d))
        if d == 2 and i % 5 == 0:
            model2d = MixtureModel(components=(c1, c2), weights=[0.5, 0.5])
            quad2d = mle_error_quadrature(model2d, 500).value
            worst_quad = max(worst_quad, abs(sol.p_minmax - quad2d))
    elapsed = time.perf_counter() - start
    _criterion(
        1,
        "equal-covariance p_minmax matches closed form and quadrature",
        worst_closed <= 1e-6 and worst_quad <= 1e-4 and elapsed < 10.0,
        f"max closed-form gap {worst_closed:.2e}, max quadrature gap "
        f"{worst_quad:.2e}, {elapsed:.1f}s",
    )


def test_criterion_02_integral_measure_oracle():
    start = time.perf_counter()
    worst_quad = 0.0
    mc_ok = True
    for delta in (0.5, 1.0, 2.0, 4.0):
        oracle = float(ndtr(-delta / 2.0))
        model = _pair_model_1d(delta)
        quad = mle_error_quadrature(model, 2000).value
        worst_quad = max(worst_quad, abs(quad - oracle))
        est = mle_error_mc(model, 1_000_000, seed=SEED + int(10 * delta))
        mc_ok = mc_ok and abs(est.value - oracle) <= 3.0 * est.std_error
    elapsed = time.perf_counter() - start
    _criterion(
        2,
        "1D quadrature within 1e-5 of the normal-tail oracle, MC within 3 SE",
        worst_quad <= 1e-5 and mc_ok and elapsed < 30.0,
        f"max quadrature gap {worst_quad:.2e}, {elapsed:.1f}s",
    )


def test_criterion_03_fisher_equivalence(labeled_datasets):
    start = time.perf_counter()
    worst = 0.0
    band_ok = count_ok = True
    for data, k in labeled_datasets:
        dec = scatter_decomposition(data)
        sol = fisher_eigen(dec, k)
        direct = np.linalg.eigvals(np.linalg.solve(dec.total, dec.between))
        direct = np.sort(direct.real)[::-1]
        worst = max(worst, float(np.max(np.abs(sol.eigenvalues - direct))))
        band_ok = band_ok and bool(
            np.all(sol.eigenvalues >= -1e-10)
            and np.all(sol.eigenvalues <= 1.0 + 1e-10)
        )
        count_ok = count_ok and int(np.sum(sol.eigenvalues > 1e-6)) == k - 1
    elapsed = time.perf_counter() - start
    _criterion(
        3,
        "symmetric reduction matches dense solve, eigenvalues in band, "
        "k-1 nonzero",
        worst <= 1e-8 and band_ok and count_ok and elapsed < 30.0,
        f"max eigenvalue gap {worst:.2e} over 100 datasets, {elapsed:.1f}s",
    )


def test_criterion_04_affine_invariance(labeled_datasets):
    start = time.perf_counter()
    rng = np.random.default_rng(SEED + 1)
    worst = 0.0
    for data, k in labeled_datasets:
        d = data.dim
        base = fisher_eigen(scatter_decomposition(data), k).eigenvalues
        for _ in range(20):
            q1, _ = np.linalg.qr(rng.standard_normal((d, d)))
            q2, _ = np.linalg.qr(rng.standard_normal((d, d)))
            a = q1 @ np.diag(rng.uniform(0.5, 2.0, size=d)) @ q2
            mapped = LabeledDataset(
                points=data.points @ a.T + rng.standard_normal(d),
                labels=data.labels,
            )
            ev = fisher_eigen(scatter_decomposition(mapped), k).eigenvalues
            worst = max(worst, float(np.max(np.abs(ev - base))))
    elapsed = time.perf_counter() - start
    _criterion(
        4,
        "Fisher eigenvalues invariant under random invertible affine maps",
        worst <= 1e-7,
        f"max shift {worst:.2e} over 100 x 20 maps, {elapsed:.1f}s",
    )


def test_criterion_05_scatter_identity(labeled_datasets):
    worst = 0.0
    for data, _ in labeled_datasets:
        dec = scatter_decomposition(data)
        gap = np.linalg.norm(dec.total - (dec.between + dec.within))
        worst = max(worst, gap / max(np.linalg.norm(dec.total), 1.0))
    _criterion(
        5,
        "T = B + W within 1e-9 relative Frobenius on all generated datasets",
        worst <= 1e-9,
        f"max relative gap {worst:.2e}",
    )


def test_criterion_06_tracking_claim(grid_sweeps):
    start = time.perf_counter()
    ok_cells = total_cells = 0
    for rows in grid_sweeps["rows"].values():
        for series in _cells(rows).values():
            rho = spearmanr(
                [r.lambda_avg for r in series],
                [r.distinctness_linear for r in series],
            ).statistic
            total_cells += 1
            if rho >= 0.95:
                ok_cells += 1
    elapsed = grid_sweeps["elapsed"] + (time.perf_counter() - start)
    _criterion(
        6,
        "lambda_avg tracks 1 - p_minmax (Spearman >= 0.95) in >= 90% of "
        "grid cells",
        ok_cells >= 0.9 * total_cells and elapsed < 300.0,
        f"{ok_cells}/{total_cells} cells, {elapsed:.1f}s",
    )


def test_criterion_07_average_vs_minimum(nd_sweeps):
    start = time.perf_counter()
    wins = total = 0
    for _, _, rows in nd_sweeps["runs"]:
        for series in _cells(rows).values():
            mc = [r.distinctness_mc for r in series]
            rho_avg = spearmanr([r.lambda_avg for r in series], mc).statistic
            rho_min = spearmanr([r.lambda_min for r in series], mc).statistic
            total += 1
            if rho_avg >= rho_min:
                wins += 1
    elapsed = nd_sweeps["elapsed"] + (time.perf_counter() - start)
    _criterion(
        7,
        "lambda_avg correlates with MC distinctness at least as well as "
        "lambda_min in >= 80% of positions",
        wins >= 0.8 * total and elapsed < 300.0,
        f"{wins}/{total} positions, {elapsed:.1f}s",
    )


def test_criterion_08_e_distance_insensitivity(grid_sweeps):
    start = time.perf_counter()

    def rel_range(values):
        return (max(values) - min(values)) / np.mean(values)

    clause1_ok_cells = 0
    e_ranges, lin_ranges = [], []
    disp_cells = _cells(grid_sweeps["rows"]["dispersion-both-2d"])
    for series in disp_cells.values():
        re = rel_range([r.e_dist for r in series])
        rl = rel_range([r.distinctness_linear for r in series])
        e_ranges.append(re)
        lin_ranges.append(rl)
        if re < 0.5 * rl:
            clause1_ok_cells += 1
    clause1 = clause1_ok_cells == len(disp_cells)

    clause2 = True
    for series in _cells(grid_sweeps["rows"]["distance-2d"]).values():
        e = [r.e_dist for r in series]
        clause2 = clause2 and all(b > a for a, b in zip(e, e[1:]))

    elapsed = time.perf_counter() - start
    _criterion(
        8,
        "e_dist relative range under half that of 1 - p_minmax over the "
        "dispersion sweep; e_dist strictly increasing over the distance sweep",
        clause1 and clause2 and elapsed < 60.0,
        f"clause 1 holds in {clause1_ok_cells}/{len(disp_cells)} cells "
        f"(median rel range: e_dist {np.median(e_ranges):.3f}, "
        f"1-p_minmax {np.median(lin_ranges):.3f}); "
        f"clause 2 {'holds' if clause2 else 'fails'}; {elapsed:.1f}s",
    )


def test_criterion_09_hand_values():
    start = time.perf_counter()
    checks = []

    data = LabeledDataset(points=np.array([[0.0], [2.0], [1.0]]),
                          labels=[1, 1, 2])
    checks.append(abs(e_distance(data, 1, 2) - 2.0 / 3.0) < 1e-14)

    singles = LabeledDataset(points=np.array([[0.0, 0.0], [3.0, 4.0]]),
                             labels=[1, 2])
    checks.append(abs(e_distance(singles, 1, 2) - 5.0) < 1e-14)

    sol = best_linear_separator(
        GaussianComponent(mean=[0.0, 0.0], cov=np.eye(2)),
        GaussianComponent(mean=[2.0, 0.0], cov=np.eye(2)),
    )
    checks.append(abs(sol.t - 0.5) < 1e-9)
    checks.append(abs(sol.threshold - 2.0) < 1e-9)
    checks.append(abs(sol.p_minmax - (1.0 - ndtr(1.0))) < 1e-12)

    low = cholesky_lower(np.array([[2.0, 1.0], [1.0, 2.0]]))
    expect = np.array([[np.sqrt(2.0), 0.0],
                       [1.0 / np.sqrt(2.0), np.sqrt(1.5)]])
    checks.append(bool(np.allclose(low, expect, rtol=1e-14, atol=0)))

    comp = GaussianComponent(mean=[0.0, 0.0], cov=np.diag([4.0, 1.0]))
    checks.append(
        abs(density(comp, np.array([2.0, 0.0])) - np.exp(-0.5) / (4.0 * np.pi))
        < 1e-16
    )

    elapsed = time.perf_counter() - start
    _criterion(
        9,
        "hand-value unit cases all exact",
        all(checks) and elapsed < 1.0,
        f"{sum(checks)}/{len(checks)} checks, {elapsed:.2f}s",
    )


def test_criterion_10_determinism(tmp_path):
    config_2d = SweepConfig(
        family="distance-2d", base=_base_2d(),
        sweep_values=(1.0, 2.5, 4.0), seed=SEED,
        n_points=60, mc_samples=2000, angle_grid=((1, 3), (5, 2)),
    )
    config_nd = SweepConfig(
        family="dispersion-nd",
        base=RandomMixtureConfig(dim=3, n_clusters=3, seed=1,
                                 eigenvalue_range=(0.5, 2.0)),
        sweep_values=(0.5, 1.0, 2.0), seed=SEED,
        n_points=40, mc_samples=2000, mean_sets=2, cov_sets=2,
    )
    ok = True
    for tag, config in (("2d", config_2d), ("nd", config_nd)):
        paths = []
        for run, jobs in (("a", 1), ("b", 1), ("c", 3)):
            path = tmp_path / f"{tag}_{run}.csv"
            emit_csv(run_sweep(config, jobs=jobs), path)
            paths.append(path.read_bytes())
        ok = ok and paths[0] == paths[1] == paths[2]

    # the full command-line path, with different --jobs values
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(
        '{"family": "distance-2d",'
        ' "base": {"radius": 3.0, "dispersion": 1.0, "axis_ratio": 0.5},'
        ' "sweep": [1.0, 3.0], "seed": 7,'
        ' "samples": {"n_points": 60, "mc": 2000}, "grid": [[2, 2]]}',
        encoding="utf-8",
    )
    out1, out2 = tmp_path / "cli1.csv", tmp_path / "cli2.csv"
    rc1 = cli_main(["sweep", "--config", str(cfg_path),
                    "--out-csv", str(out1), "--jobs", "1"])
    rc2 = cli_main(["sweep", "--config", str(cfg_path),
                    "--out-csv", str(out2), "--jobs", "2"])
    ok = ok and rc1 == 0 and rc2 == 0 and out1.read_bytes() == out2.read_bytes()
    _criterion(
        10,
        "identical seeds give byte-identical CSV, independent of --jobs",
        ok,
    )
