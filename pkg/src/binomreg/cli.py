"""Command-line interface.

Subcommands::

    binomreg crosstab      --data d.csv --config c.json [--format F]
    binomreg fit           --data d.csv --config c.json [--format F] [--max-iter K]
    binomreg compare-links --data d.csv --config c.json [--format F] [--max-iter K]
    binomreg simulate      --config c.json --truth a,b,c --rows N
                           --group-size M --out d.csv [--seed S]

Exit codes: 0 success, 1 configuration or data validation failure,
2 numerical failure (rank-deficient design, or every link failed).
"""

import argparse
import sys

import numpy as np

from . import reports
from .config import ConfigError, DataValidationError, load_config, parse_csv
from .crosstab import DegenerateTableError, build_crosstab, chi_square_test
from .design import build_design
from .glm import compare_links, fit_binomial
from .linalg import RankDeficiencyError
from .simulate import simulate_dataset, write_dataset_csv

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binomreg",
        description=(
            "Binomial regression with selectable link functions: chi-square "
            "screening, IRLS fitting, link comparison, and synthetic data."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, data_required=True):
        if data_required:
            p.add_argument("--data", required=True, help="input CSV path")
        p.add_argument("--config", required=True, help="model config JSON path")
        p.add_argument(
            "--format", choices=("text", "csv", "json"), default=None,
            help="output format (overrides config)",
        )
        p.add_argument(
            "--max-iter", type=int, default=None,
            help="IRLS iteration cap (overrides config)",
        )
        p.add_argument(
            "--seed", type=int, default=None,
            help="random seed (overrides config; simulate only)",
        )

    common(sub.add_parser("crosstab", help="chi-square screening per variable"))
    common(sub.add_parser("fit", help="fit the first configured link"))
    common(sub.add_parser("compare-links", help="fit and rank all configured links"))

    sim = sub.add_parser("simulate", help="write a synthetic CSV from known coefficients")
    common(sim, data_required=False)
    sim.add_argument(
        "--truth", required=True,
        help="comma-separated true coefficients, intercept first",
    )
    sim.add_argument("--rows", type=int, required=True, help="number of groups")
    sim.add_argument("--group-size", type=int, required=True, help="trials per group")
    sim.add_argument("--out", required=True, help="output CSV path")
    return parser


def _settings(args, config):
    fmt = args.format if args.format is not None else config.output_format
    max_iter = args.max_iter if args.max_iter is not None else config.max_iter
    seed = args.seed if args.seed is not None else config.seed
    return fmt, max_iter, seed


def _cmd_crosstab(args) -> int:
    config = load_config(args.config)
    fmt, _, _ = _settings(args, config)
    data = parse_csv(args.data, config)
    entries = []
    for spec in config.variables:
        try:
            entries.append((spec.name, chi_square_test(build_crosstab(data, spec)), None))
        except DegenerateTableError as exc:
            entries.append((spec.name, None, str(exc)))
    sys.stdout.write(reports.render_crosstab(entries, fmt))
    return EXIT_OK


def _cmd_fit(args) -> int:
    config = load_config(args.config)
    fmt, max_iter, _ = _settings(args, config)
    data = parse_csv(args.data, config)
    design = build_design(data, config.variables)
    try:
        result = fit_binomial(
            design, data.successes, data.trials, config.links[0],
            max_iter=max_iter,
        )
    except RankDeficiencyError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NUMERICAL
    sys.stdout.write(reports.render_fit(result, fmt))
    return EXIT_OK


def _cmd_compare_links(args) -> int:
    config = load_config(args.config)
    fmt, max_iter, _ = _settings(args, config)
    data = parse_csv(args.data, config)
    design = build_design(data, config.variables)
    report = compare_links(
        design, data.successes, data.trials, config.links, max_iter=max_iter,
    )
    sys.stdout.write(reports.render_comparison(report, fmt))
    if all(entry.result is None for entry in report.fits):
        sys.stderr.write("error: every link failed to fit\n")
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_simulate(args) -> int:
    config = load_config(args.config)
    _, _, seed = _settings(args, config)
    if seed is None:
        sys.stderr.write("error: simulate needs --seed (or a config seed)\n")
        return EXIT_VALIDATION
    try:
        truth = np.array([float(v) for v in args.truth.split(",")])
    except ValueError:
        sys.stderr.write("error: --truth is not a comma-separated float list\n")
        return EXIT_VALIDATION
    dataset = simulate_dataset(config, truth, args.rows, args.group_size, seed)
    write_dataset_csv(dataset, config, args.out)
    sys.stderr.write(f"wrote {args.out} ({dataset.n_rows} rows, seed {seed})\n")
    return EXIT_OK


_COMMANDS = {
    "crosstab": _cmd_crosstab,
    "fit": _cmd_fit,
    "compare-links": _cmd_compare_links,
    "simulate": _cmd_simulate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, DataValidationError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
