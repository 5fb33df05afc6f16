"""Command-line front end.

Three subcommands: ``sweep`` runs a configured parameter sweep and
writes CSV (and optionally one SVG chart per grid cell), ``measure``
prints every applicable measure for a mixture or dataset file as
key=value lines, and ``generate`` samples a dataset CSV from a
generator description.

Exit codes: 0 on success, 1 for configuration or input problems, 2 for
numerical failures.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import fisher, mixture, overlap, scatter, separator, svgchart, sweep
from .errors import NumericalError

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; this tool reserves 2 for
    # numerical failures, so usage problems must exit 1 instead.
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _build_parser():
    parser = _Parser(
        prog="mixsep",
        description="Overlap and distinctness measures for Gaussian mixtures.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_sweep = sub.add_parser("sweep", help="run a configured parameter sweep")
    p_sweep.add_argument("--config", required=True, help="JSON sweep description")
    p_sweep.add_argument("--out-csv", required=True, help="output CSV path")
    p_sweep.add_argument(
        "--out-svg-dir", help="directory for one chart per grid cell"
    )
    p_sweep.add_argument("--seed", type=int, help="override the config seed")
    p_sweep.add_argument(
        "--model-exact",
        action="store_true",
        help="measure the true generating parameters instead of estimates",
    )
    p_sweep.add_argument("--jobs", type=int, default=1, help="worker processes")

    p_measure = sub.add_parser(
        "measure", help="print all applicable measures for one input"
    )
    source = p_measure.add_mutually_exclusive_group(required=True)
    source.add_argument("--model", help="mixture JSON file")
    source.add_argument("--data", help="labeled dataset CSV file")
    p_measure.add_argument(
        "--mc-samples", type=int, default=100_000, help="Monte Carlo sample count"
    )
    p_measure.add_argument(
        "--quad-cells", type=int, default=2000, help="quadrature cells per axis"
    )
    p_measure.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")

    p_gen = sub.add_parser("generate", help="sample a dataset CSV from a generator")
    p_gen.add_argument("--config", required=True, help="JSON generator description")
    p_gen.add_argument("--out", required=True, help="output dataset CSV path")
    p_gen.add_argument("--seed", type=int, default=0, help="sampling seed")
    return parser


def _cmd_sweep(args):
    config = sweep.load_sweep_config(args.config)
    if args.seed is not None:
        config = sweep.with_seed(config, args.seed)
    if args.jobs < 1:
        raise ValueError("--jobs must be at least 1")
    rows = sweep.run_sweep(config, model_exact=args.model_exact, jobs=args.jobs)
    sweep.emit_csv(rows, args.out_csv)
    if args.out_svg_dir:
        os.makedirs(args.out_svg_dir, exist_ok=True)
        for cell in config.cells:
            name = f"{config.family}_cell_{cell[0]}_{cell[1]}.svg"
            svgchart.emit_chart(rows, cell, os.path.join(args.out_svg_dir, name))
    return 0


def _print_model_measures(model, args):
    lines = []
    if model.dim <= 2:
        est = overlap.mle_error_quadrature(model, args.quad_cells)
        lines.append(("mle_err_quadrature", est.value))
    est = overlap.mle_error_mc(model, args.mc_samples, args.seed)
    lines.append(("mle_err_mc", est.value))
    lines.append(("mle_err_mc_std_error", est.std_error))
    if model.n_components == 2:
        sol = separator.best_linear_separator(
            model.components[0], model.components[1]
        )
        lines.append(("p_minmax", sol.p_minmax))
        lines.append(("separator_t", sol.t))
        lines.append(("separator_threshold", sol.threshold))
    total, between, _ = scatter.population_scatter(model)
    sol = fisher.fisher_eigen_from_matrices(total, between, model.n_components)
    lines.append(("lambda_avg", sol.lambda_avg))
    lines.append(("lambda_min", sol.lambda_min))
    return lines


def _cmd_measure(args):
    if args.model:
        model = mixture.load_model(args.model)
        lines = _print_model_measures(model, args)
    else:
        data = mixture.dataset_from_csv(args.data)
        model = mixture.estimate_from_labels(data)
        lines = _print_model_measures(model, args)
        for a in range(1, data.n_classes + 1):
            for b in range(a + 1, data.n_classes + 1):
                lines.append((f"e_dist_{a}_{b}", overlap.e_distance(data, a, b)))
    for key, value in lines:
        print(f"{key}={value:.17g}")
    return 0


def _cmd_generate(args):
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise OSError(f"cannot read generator config {args.config}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{args.config}: not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "type" not in payload:
        raise ValueError(f"{args.config}: generator config needs a 'type' key")
    kind = payload["type"]
    fields = {k: v for k, v in payload.items() if k != "type"}
    if kind == "two-dim":
        alphas = fields.pop("alphas", None)
        config = mixture.TwoDimConfig(
            radius=float(fields.pop("radius")),
            rotation=float(fields.pop("rotation", 0.0)),
            dispersion=float(fields.pop("dispersion")),
            axis_ratio=float(fields.pop("axis_ratio")),
            n_clusters=int(fields.pop("n_clusters", 2)),
            sizes=tuple(int(s) for s in fields.pop("sizes")),
        )
        if fields:
            raise ValueError(f"{args.config}: unknown keys {sorted(fields)}")
        _, data = mixture.generate_two_dim(config, alphas=alphas, seed=args.seed)
    elif kind == "random-nd":
        n_per_class = int(fields.pop("n_per_class"))
        config = mixture.RandomMixtureConfig(
            dim=int(fields.pop("dim")),
            n_clusters=int(fields.pop("n_clusters")),
            seed=int(fields.pop("seed")),
            eigenvalue_range=tuple(float(v) for v in fields.pop("eigenvalue_range")),
        )
        if fields:
            raise ValueError(f"{args.config}: unknown keys {sorted(fields)}")
        if n_per_class < 1:
            raise ValueError("n_per_class must be positive")
        model = mixture.generate_random_mixture(config)
        data = mixture.sample_by_class(
            model, (n_per_class,) * config.n_clusters, args.seed
        )
    else:
        raise ValueError(
            f"{args.config}: unknown generator type {kind!r} "
            "(expected 'two-dim' or 'random-nd')"
        )
    mixture.dataset_to_csv(data, args.out)
    return 0


_COMMANDS = {"sweep": _cmd_sweep, "measure": _cmd_measure, "generate": _cmd_generate}


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except KeyError as exc:
        # A missing dict key in an input file is a config problem.
        print(f"mixsep: error: missing key {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"mixsep: error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"mixsep: numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
