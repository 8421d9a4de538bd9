"""Binomial regression with selectable link functions.

Fits grouped success/trial data by maximum likelihood (IRLS) under the
logit, probit, complementary log-log, or cauchit link; reports Wald
standard errors, significance stars, deviance and AIC; compares links by
minimum AIC; and screens categorical predictors with Pearson chi-square
tests.  A scikit-learn compatible estimator (`BinomialRegression`) wraps
the engine, and the ``binomreg`` CLI drives CSV workflows.
"""

from .config import (
    ConfigError,
    DataValidationError,
    ModelConfig,
    load_config,
    parse_csv,
)
from .crosstab import (
    ChiSqResult,
    CrossTab,
    DegenerateTableError,
    build_crosstab,
    chi_square_test,
)
from .design import (
    Dataset,
    DesignMatrix,
    VariableSpec,
    build_design,
    validate_dataset,
)
from .estimator import BinomialRegression
from .glm import (
    ComparisonReport,
    ConvergenceWarning,
    FitResult,
    SeparationWarning,
    aic,
    compare_links,
    deviance,
    fit_binomial,
    log_likelihood,
    significance_stars,
)
from .linalg import RankDeficiencyError, WlsSolution, weighted_least_squares
from .links import LINK_NAMES, LinkFns, clamp_mu, link_for
from .simulate import SplitMix64, simulate_dataset, write_dataset_csv

__version__ = "0.1.0"

__all__ = [
    "BinomialRegression",
    "ChiSqResult",
    "ComparisonReport",
    "ConfigError",
    "ConvergenceWarning",
    "CrossTab",
    "DataValidationError",
    "Dataset",
    "DegenerateTableError",
    "DesignMatrix",
    "FitResult",
    "LINK_NAMES",
    "LinkFns",
    "ModelConfig",
    "RankDeficiencyError",
    "SeparationWarning",
    "SplitMix64",
    "VariableSpec",
    "WlsSolution",
    "aic",
    "build_crosstab",
    "build_design",
    "chi_square_test",
    "clamp_mu",
    "compare_links",
    "deviance",
    "fit_binomial",
    "link_for",
    "load_config",
    "log_likelihood",
    "parse_csv",
    "significance_stars",
    "simulate_dataset",
    "validate_dataset",
    "weighted_least_squares",
    "write_dataset_csv",
]
