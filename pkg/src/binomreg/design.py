"""Grouped-count dataset model and dummy-coded design matrices.

Categorical predictors are treatment-coded against an explicitly declared
reference level: one indicator column per non-reference level, ordered by
variable declaration order and then declared level order, after a leading
intercept column.  No automatic level discovery happens anywhere; the
level sets and reference groups come from :class:`VariableSpec` so they
stay auditable.
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "VariableSpec",
    "Dataset",
    "DesignMatrix",
    "INTERCEPT_LABEL",
    "build_design",
    "validate_dataset",
]

INTERCEPT_LABEL = "(Intercept)"


@dataclass(frozen=True)
class VariableSpec:
    """A categorical predictor: name, ordered levels, and reference level."""

    name: str
    levels: tuple[str, ...]
    reference: str

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(str(l) for l in self.levels))
        if len(self.levels) < 2:
            raise ValueError(f"variable {self.name!r} needs at least 2 levels")
        if len(set(self.levels)) != len(self.levels):
            raise ValueError(f"variable {self.name!r} has duplicate levels")
        if self.reference not in self.levels:
            raise ValueError(
                f"reference {self.reference!r} is not a level of {self.name!r}"
            )

    @property
    def coded_levels(self) -> tuple[str, ...]:
        """Non-reference levels, in declared order (one column each)."""
        return tuple(l for l in self.levels if l != self.reference)


@dataclass(frozen=True)
class Dataset:
    """Grouped observations: success/trial counts plus categorical values.

    ``categoricals`` maps variable name to the per-row level labels; every
    sequence must have the same length as the count vectors.  Value-level
    validity (0 <= y <= n, n >= 1, level membership) is checked by
    :func:`validate_dataset`, not at construction, so that bad rows can be
    reported in bulk.
    """

    successes: np.ndarray
    trials: np.ndarray
    categoricals: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        y = np.asarray(self.successes, dtype=np.int64)
        n = np.asarray(self.trials, dtype=np.int64)
        if y.ndim != 1 or n.ndim != 1 or y.shape != n.shape:
            raise ValueError("successes and trials must be equal-length vectors")
        object.__setattr__(self, "successes", y)
        object.__setattr__(self, "trials", n)
        cats = {
            str(name): tuple(str(v) for v in values)
            for name, values in self.categoricals.items()
        }
        for name, values in cats.items():
            if len(values) != y.shape[0]:
                raise ValueError(
                    f"variable {name!r} has {len(values)} values for "
                    f"{y.shape[0]} rows"
                )
        object.__setattr__(self, "categoricals", cats)

    @property
    def n_rows(self) -> int:
        return int(self.successes.shape[0])


@dataclass(frozen=True)
class DesignMatrix:
    """Dense design with intercept, indicator columns, and their labels."""

    matrix: np.ndarray
    column_labels: tuple[str, ...]
    specs: tuple[VariableSpec, ...] = ()

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2:
            raise ValueError("design matrix must be 2-d")
        if not np.all(np.isfinite(m)):
            raise ValueError("design matrix contains non-finite entries")
        if len(self.column_labels) != m.shape[1]:
            raise ValueError("one label per design column required")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "column_labels", tuple(self.column_labels))
        object.__setattr__(self, "specs", tuple(self.specs))

    @property
    def n_rows(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def n_cols(self) -> int:
        return int(self.matrix.shape[1])


def validate_dataset(data: Dataset, specs=()) -> list[str]:
    """Collect every row-level violation; an empty list means valid.

    Checks 0 <= successes <= trials and trials >= 1 on every row, plus
    level membership against ``specs`` when given.  Row numbers in the
    messages are 1-based, matching CSV data-row numbering.
    """
    violations = []
    y, n = data.successes, data.trials
    for i in range(data.n_rows):
        row = i + 1
        if n[i] < 1:
            violations.append(f"row {row}: trials must be >= 1, got {n[i]}")
        if y[i] < 0:
            violations.append(f"row {row}: successes must be >= 0, got {y[i]}")
        elif y[i] > n[i]:
            violations.append(
                f"row {row}: successes {y[i]} exceed trials {n[i]}"
            )
    for spec in specs:
        values = data.categoricals.get(spec.name)
        if values is None:
            violations.append(f"variable {spec.name!r} missing from dataset")
            continue
        allowed = set(spec.levels)
        for i, value in enumerate(values):
            if value not in allowed:
                violations.append(
                    f"row {i + 1}: unknown level {value!r} for variable "
                    f"{spec.name!r}"
                )
    return violations


def build_design(data: Dataset, specs) -> DesignMatrix:
    """Dummy-code ``data`` against ``specs`` with a leading intercept.

    Column order is (intercept, then per spec in order, per non-reference
    level in declared order); the construction is deterministic and never
    reorders rows.
    """
    specs = tuple(specs)
    labels = [INTERCEPT_LABEL]
    for spec in specs:
        if spec.name not in data.categoricals:
            raise ValueError(f"variable {spec.name!r} missing from dataset")
        labels.extend(f"{spec.name}={level}" for level in spec.coded_levels)
    n_rows = data.n_rows
    matrix = np.zeros((n_rows, len(labels)))
    matrix[:, 0] = 1.0
    col = 1
    for spec in specs:
        values = data.categoricals[spec.name]
        allowed = set(spec.levels)
        for i, value in enumerate(values):
            if value not in allowed:
                raise ValueError(
                    f"row {i + 1}: unknown level {value!r} for variable "
                    f"{spec.name!r}"
                )
        for level in spec.coded_levels:
            matrix[:, col] = [1.0 if v == level else 0.0 for v in values]
            col += 1
    return DesignMatrix(matrix, tuple(labels), specs)
