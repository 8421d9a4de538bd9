"""Model configuration and CSV ingestion.

The configuration is an explicit JSON file rather than command-line
flags: variable level sets and reference groups are too structured for
flags, and keeping them in one reviewed file makes the coding auditable.

Expected shape::

    {
      "response": {"successes": "malnourished", "trials": "children"},
      "variables": [
        {"name": "area", "levels": ["urban", "rural"], "reference": "urban"},
        ...
      ],
      "links": ["logit", "probit", "cloglog", "cauchit"],
      "format": "text",
      "seed": 42,
      "max_iter": 100
    }

``format``, ``seed`` and ``max_iter`` are optional and can be overridden
by CLI flags.
"""

import csv
import json
from dataclasses import dataclass

import numpy as np

from .design import Dataset, VariableSpec, validate_dataset
from .links import LINK_NAMES, link_for

__all__ = [
    "ConfigError",
    "DataValidationError",
    "ModelConfig",
    "load_config",
    "parse_csv",
]

OUTPUT_FORMATS = ("text", "csv", "json")


class ConfigError(ValueError):
    """The configuration file is malformed or inconsistent."""


class DataValidationError(ValueError):
    """The data file violated the declared schema; carries every violation."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        lines = "\n".join(f"  - {v}" for v in self.violations)
        super().__init__(f"{len(self.violations)} data violation(s):\n{lines}")


@dataclass(frozen=True)
class ModelConfig:
    """Column mapping, variable declarations, and run options."""

    successes_column: str
    trials_column: str
    variables: tuple[VariableSpec, ...]
    links: tuple[str, ...] = LINK_NAMES
    output_format: str = "text"
    seed: int | None = None
    max_iter: int = 100

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "links", tuple(self.links))
        if self.successes_column == self.trials_column:
            raise ConfigError("response columns must be distinct")
        if not self.variables:
            raise ConfigError("at least one variable is required")
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ConfigError("variable names must be distinct")
        if not self.links:
            raise ConfigError("at least one link is required")
        for kind in self.links:
            link_for(kind)
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(
                f"unknown format {self.output_format!r}; "
                f"expected one of {OUTPUT_FORMATS}"
            )
        if self.max_iter < 1:
            raise ConfigError("max_iter must be >= 1")
        if self.seed is not None and self.seed < 0:
            raise ConfigError("seed must be a nonnegative integer")


def load_config(path) -> ModelConfig:
    """Parse and validate a JSON model configuration."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    try:
        response = raw["response"]
        variables = []
        for entry in raw["variables"]:
            variables.append(
                VariableSpec(
                    name=str(entry["name"]),
                    levels=tuple(str(l) for l in entry["levels"]),
                    reference=str(entry["reference"]),
                )
            )
        return ModelConfig(
            successes_column=str(response["successes"]),
            trials_column=str(response["trials"]),
            variables=tuple(variables),
            links=tuple(str(l).lower() for l in raw.get("links", LINK_NAMES)),
            output_format=str(raw.get("format", "text")),
            seed=raw.get("seed"),
            max_iter=int(raw.get("max_iter", 100)),
        )
    except KeyError as exc:
        raise ConfigError(f"config is missing required key {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad config value: {exc}") from exc


def parse_csv(path, config: ModelConfig) -> Dataset:
    """Read a CSV file into a validated Dataset.

    Count columns must hold base-10 integers; categorical cells are
    whitespace-trimmed and matched against the declared levels.  Extra
    columns are ignored.  All violations (parse and value level) are
    collected and raised together as :class:`DataValidationError`.
    """
    needed = [config.successes_column, config.trials_column]
    needed += [v.name for v in config.variables]
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise DataValidationError(["file has no header row"])
        header = [h.strip() for h in reader.fieldnames]
        missing = [c for c in needed if c not in header]
        if missing:
            raise DataValidationError(
                [f"missing column {c!r}" for c in missing]
            )
        violations = []
        successes, trials = [], []
        values = {v.name: [] for v in config.variables}
        for i, row in enumerate(reader, start=1):
            cells = {
                (k.strip() if k else k): (v.strip() if v is not None else "")
                for k, v in row.items()
            }
            ok_counts = True
            parsed = {}
            for column in (config.successes_column, config.trials_column):
                try:
                    parsed[column] = int(cells[column], 10)
                except (ValueError, TypeError, KeyError):
                    violations.append(
                        f"row {i}: column {column!r} is not an integer "
                        f"({cells.get(column, '')!r})"
                    )
                    ok_counts = False
            if ok_counts:
                successes.append(parsed[config.successes_column])
                trials.append(parsed[config.trials_column])
            else:
                successes.append(0)  # placeholder keeps rows aligned
                trials.append(1)
            for spec in config.variables:
                values[spec.name].append(cells.get(spec.name, ""))
    dataset = Dataset(
        np.asarray(successes, dtype=np.int64),
        np.asarray(trials, dtype=np.int64),
        {name: tuple(vals) for name, vals in values.items()},
    )
    violations.extend(validate_dataset(dataset, config.variables))
    if violations:
        raise DataValidationError(violations)
    return dataset
