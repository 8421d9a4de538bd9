"""Chi-square screening of categorical predictors against the outcome.

Each predictor is cross-tabulated against the aggregated binary outcome
(successes vs. the remainder of the trials, summed over the rows holding
each level) and tested for independence with the plain Pearson statistic;
no continuity correction is applied.  Expected cells below 5 raise a
warning flag on the result rather than refusing the test.
"""

from dataclasses import dataclass

import numpy as np

from . import special
from .design import Dataset, VariableSpec
from .glm import significance_stars

__all__ = [
    "DegenerateTableError",
    "CrossTab",
    "ChiSqResult",
    "build_crosstab",
    "chi_square_test",
]

DEFAULT_OUTCOME_LABELS = ("malnourished", "not")

LOW_EXPECTED_THRESHOLD = 5.0


class DegenerateTableError(ValueError):
    """A contingency table has an all-zero row or column."""

    def __init__(self, label: str, axis: str):
        self.label = label
        self.axis = axis
        super().__init__(f"degenerate table: {axis} {label!r} has no observations")


@dataclass(frozen=True)
class CrossTab:
    """An r x c contingency table with labeled margins."""

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.ndim != 2:
            raise ValueError("counts must be a 2-d table")
        if counts.shape[0] < 2 or counts.shape[1] < 2:
            raise ValueError("a contingency table needs at least 2 rows and 2 columns")
        if counts.shape != (len(self.row_labels), len(self.col_labels)):
            raise ValueError("label lengths must match the table shape")
        if np.any(counts < 0):
            raise ValueError("counts must be nonnegative")
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))


@dataclass(frozen=True)
class ChiSqResult:
    """Pearson chi-square test output for one table."""

    chi2: float
    df: int
    p_value: float
    star: str
    low_expected_warning: bool


def build_crosstab(
    data: Dataset,
    variable: VariableSpec,
    col_labels: tuple[str, str] = DEFAULT_OUTCOME_LABELS,
) -> CrossTab:
    """Aggregate (sum y, sum n - y) per level of one variable.

    Levels appear in declared order; a level with no rows keeps an
    all-zero row (which :func:`chi_square_test` will reject by name).
    """
    values = data.categoricals.get(variable.name)
    if values is None:
        raise ValueError(f"variable {variable.name!r} missing from dataset")
    allowed = set(variable.levels)
    for i, value in enumerate(values):
        if value not in allowed:
            raise ValueError(
                f"row {i + 1}: unknown level {value!r} for variable "
                f"{variable.name!r}"
            )
    counts = np.zeros((len(variable.levels), 2), dtype=np.int64)
    index = {level: r for r, level in enumerate(variable.levels)}
    y, n = data.successes, data.trials
    for i, value in enumerate(values):
        r = index[value]
        counts[r, 0] += y[i]
        counts[r, 1] += n[i] - y[i]
    return CrossTab(variable.levels, tuple(col_labels), counts)


def chi_square_test(tab: CrossTab) -> ChiSqResult:
    """Pearson chi-square test of independence on a contingency table.

    Raises :class:`DegenerateTableError` naming the first all-zero row or
    column; otherwise returns the statistic, (r-1)(c-1) degrees of
    freedom, the survival-function p-value, and its significance star.
    """
    counts = tab.counts.astype(float)
    total = counts.sum()
    if total < 1:
        raise DegenerateTableError(tab.row_labels[0], "row")
    row_sums = counts.sum(axis=1)
    col_sums = counts.sum(axis=0)
    for r, s in enumerate(row_sums):
        if s == 0:
            raise DegenerateTableError(tab.row_labels[r], "row")
    for c, s in enumerate(col_sums):
        if s == 0:
            raise DegenerateTableError(tab.col_labels[c], "column")
    expected = np.outer(row_sums, col_sums) / total
    chi2 = float(np.sum((counts - expected) ** 2 / expected))
    df = (counts.shape[0] - 1) * (counts.shape[1] - 1)
    p_value = float(special.chisq_sf(chi2, df))
    return ChiSqResult(
        chi2=chi2,
        df=df,
        p_value=p_value,
        star=significance_stars(p_value),
        low_expected_warning=bool(np.any(expected < LOW_EXPECTED_THRESHOLD)),
    )
