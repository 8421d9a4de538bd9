"""Maximum-likelihood binomial regression via IRLS, for any link.

The engine implements Fisher scoring as iteratively reweighted least
squares on the working response z = eta + (y/n - mu) / (dmu/deta), with
binomial weights n * (dmu/deta)^2 / (mu * (1 - mu)).  Convergence is
declared on the relative change of the deviance, the quantity the rest of
the package reports.  Inference is Wald: standard errors from the inverse
Fisher information at the estimate, two-sided p-values against the
standard normal, and significance stars at the 10% / 5% / 1% levels.

The log-likelihood includes the log C(n, y) binomial constant, so
reported values (and hence AIC) are those of the full binomial
likelihood; the constant is identical across links and cancels in any
between-link comparison.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import linalg, special
from .design import DesignMatrix, VariableSpec
from .links import LINK_NAMES, clamp_mu, link_for

__all__ = [
    "ConvergenceWarning",
    "SeparationWarning",
    "FitResult",
    "LinkFit",
    "ComparisonReport",
    "significance_stars",
    "log_likelihood",
    "deviance",
    "aic",
    "fit_binomial",
    "compare_links",
]

SEPARATION_ETA = 30.0

# mu_eta floor: keeps weights strictly positive when a saturated linear
# predictor underflows the derivative, without letting z*w overflow.
_D_FLOOR = 1e-100

_STAR_LEVELS = ((0.01, "***"), (0.05, "**"), (0.10, "*"))


class ConvergenceWarning(UserWarning):
    """IRLS stopped at max_iter, or the likelihood failed to ascend."""


class SeparationWarning(UserWarning):
    """Some |eta| exceeds the saturation threshold at convergence."""


def significance_stars(p_value: float) -> str:
    """Star marker for a p-value: *** <=1%, ** <=5%, * <=10%, else blank."""
    for threshold, marker in _STAR_LEVELS:
        if p_value <= threshold:
            return marker
    return ""


@dataclass(frozen=True)
class FitResult:
    """Everything one binomial fit reports."""

    link: str
    coefficients: np.ndarray
    std_errors: np.ndarray
    z_values: np.ndarray
    p_values: np.ndarray
    stars: tuple[str, ...]
    log_likelihood: float
    deviance: float
    aic: float
    iterations: int
    converged: bool
    fitted_probs: np.ndarray
    column_labels: tuple[str, ...]

    @property
    def n_params(self) -> int:
        return int(self.coefficients.shape[0])


@dataclass(frozen=True)
class LinkFit:
    """One link's entry in a comparison: a result or a failure message."""

    link: str
    result: FitResult | None
    error: str | None
    messages: tuple[str, ...]

    @property
    def failed(self) -> bool:
        return self.result is None


@dataclass(frozen=True)
class ComparisonReport:
    """Per-link fits plus the minimum-AIC selection."""

    term_labels: tuple[str, ...]
    fits: tuple[LinkFit, ...]
    selected: str | None
    specs: tuple[VariableSpec, ...] = ()

    @property
    def warnings(self) -> tuple[str, ...]:
        out = []
        for entry in self.fits:
            out.extend(f"{entry.link}: {m}" for m in entry.messages)
            if entry.error is not None:
                out.append(f"{entry.link}: failed: {entry.error}")
        return tuple(out)


def _check_counts(successes, trials):
    y = np.asarray(successes, dtype=float)
    n = np.asarray(trials, dtype=float)
    if y.ndim != 1 or n.ndim != 1 or y.shape != n.shape:
        raise ValueError("successes and trials must be equal-length vectors")
    if not (np.all(np.isfinite(y)) and np.all(np.isfinite(n))):
        raise ValueError("counts must be finite")
    if np.any(n < 1):
        raise ValueError("every trials entry must be >= 1")
    if np.any(y < 0) or np.any(y > n):
        raise ValueError("successes must satisfy 0 <= y <= n")
    return y, n


def _check_probs(pi, length):
    p = np.asarray(pi, dtype=float)
    if p.shape != (length,):
        raise ValueError("probability vector length mismatch")
    if np.any(~np.isfinite(p)) or np.any(p <= 0.0) or np.any(p >= 1.0):
        raise ValueError("probabilities must lie strictly inside (0, 1)")
    return p


def log_likelihood(successes, trials, pi) -> float:
    """Full binomial log-likelihood, including the log C(n, y) constant."""
    y, n = _check_counts(successes, trials)
    p = _check_probs(pi, y.shape[0])
    log1mp = np.log1p(-p)
    terms = y * (np.log(p) - log1mp) + n * log1mp + special.log_choose(n, y)
    return float(np.sum(terms))


def deviance(successes, trials, pi_hat) -> float:
    """Residual deviance 2 * (saturated - model log-likelihood).

    Terms with y = 0 or y = n contribute through the surviving factor
    only (the 0 * log(0) convention).  A value below -1e-8 signals an
    internal inconsistency and raises; small negative rounding noise is
    clipped to zero.
    """
    y, n = _check_counts(successes, trials)
    p = _check_probs(pi_hat, y.shape[0])
    fitted = n * p
    with np.errstate(divide="ignore", invalid="ignore"):
        left = np.where(y > 0, y * np.log(y / fitted), 0.0)
        right = np.where(n - y > 0, (n - y) * np.log((n - y) / (n - fitted)), 0.0)
    total = 2.0 * float(np.sum(left + right))
    if total < -1e-8:
        raise ValueError(f"deviance came out negative ({total:.3e})")
    return max(total, 0.0)


def aic(ell_hat: float, n_params: int) -> float:
    """Akaike information criterion 2k - 2*loglik; smaller is better."""
    if n_params < 1:
        raise ValueError("n_params must be >= 1")
    return 2.0 * n_params - 2.0 * ell_hat


def _as_design(design):
    if isinstance(design, DesignMatrix):
        return design.matrix, design.column_labels
    x = np.asarray(design, dtype=float)
    if x.ndim != 2:
        raise ValueError("design must be a DesignMatrix or a 2-d array")
    return x, tuple(f"x{j}" for j in range(x.shape[1]))


def fit_binomial(
    design,
    successes,
    trials,
    link: str = "logit",
    *,
    max_iter: int = 100,
    tol: float = 1e-10,
) -> FitResult:
    """Fit a binomial regression by IRLS under the given link.

    Parameters
    ----------
    design : DesignMatrix or (n, p) array
        Must include its own intercept column if one is wanted.
    successes, trials : (n,) integer vectors with 0 <= y <= n, n >= 1.
    link : one of "logit", "probit", "cloglog", "cauchit".
    max_iter : iteration cap; hitting it returns a result flagged
        ``converged=False`` and emits :class:`ConvergenceWarning`.
    tol : relative deviance-change threshold,
        |D_t - D_{t-1}| <= tol * (|D_t| + 1).

    Raises
    ------
    linalg.RankDeficiencyError
        When the design is collinear; the message names the column.
    """
    x, labels = _as_design(design)
    y, n = _check_counts(successes, trials)
    n_obs, n_params = x.shape
    if y.shape[0] != n_obs:
        raise ValueError("design and response lengths differ")
    if n_obs < n_params:
        raise ValueError(f"need at least p={n_params} rows, got {n_obs}")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    fns = link_for(link)

    prop = y / n
    mu = (y + 0.5) / (n + 1.0)  # interior even for y in {0, n}
    eta = np.asarray(fns.g(mu), dtype=float)

    sol = None
    ll_first = None
    prev_dev = None
    converged = False
    iterations = max_iter
    for iteration in range(1, max_iter + 1):
        mu = clamp_mu(fns.g_inv(eta))
        d = np.maximum(np.asarray(fns.mu_eta(eta), dtype=float), _D_FLOOR)
        z = eta + (prop - mu) / d
        w = n * d * d / (mu * (1.0 - mu))
        sol = linalg.weighted_least_squares(x, w, z, column_labels=labels)
        eta = x @ sol.coefficients
        dev = deviance(y, n, clamp_mu(fns.g_inv(eta)))
        if iteration == 1:
            ll_first = log_likelihood(y, n, clamp_mu(fns.g_inv(eta)))
        if prev_dev is not None and abs(dev - prev_dev) <= tol * (abs(dev) + 1.0):
            converged = True
            iterations = iteration
            break
        prev_dev = dev
    if not converged:
        warnings.warn(
            f"IRLS did not converge in {max_iter} iterations under the "
            f"{fns.name} link",
            ConvergenceWarning,
            stacklevel=2,
        )
    max_eta = float(np.max(np.abs(eta)))
    if max_eta > SEPARATION_ETA:
        warnings.warn(
            f"possible separation under the {fns.name} link: "
            f"max |eta| = {max_eta:.1f} exceeds {SEPARATION_ETA:.0f}",
            SeparationWarning,
            stacklevel=2,
        )

    probs = clamp_mu(fns.g_inv(eta))
    # Fisher information at the returned estimate, not at the last
    # pre-update weights; identical within the convergence tolerance.
    d = np.maximum(np.asarray(fns.mu_eta(eta), dtype=float), _D_FLOOR)
    w = n * d * d / (probs * (1.0 - probs))
    covariance = linalg.xtwx_inverse(x, w, column_labels=labels)
    std_errors = np.sqrt(np.maximum(np.diag(covariance), 0.0))
    z_values = sol.coefficients / std_errors
    p_values = 2.0 * np.atleast_1d(np.asarray(special.norm_cdf(-np.abs(z_values))))
    stars = tuple(significance_stars(p) for p in p_values)

    ell = log_likelihood(y, n, probs)
    if ell + 1e-8 < ll_first:
        warnings.warn(
            f"log-likelihood decreased across IRLS iterations under the "
            f"{fns.name} link ({ll_first:.6f} -> {ell:.6f})",
            ConvergenceWarning,
            stacklevel=2,
        )
    return FitResult(
        link=fns.name,
        coefficients=sol.coefficients,
        std_errors=std_errors,
        z_values=z_values,
        p_values=p_values,
        stars=stars,
        log_likelihood=ell,
        deviance=deviance(y, n, probs),
        aic=aic(ell, n_params),
        iterations=iterations,
        converged=converged,
        fitted_probs=probs,
        column_labels=tuple(labels),
    )


def compare_links(
    design,
    successes,
    trials,
    links=LINK_NAMES,
    *,
    max_iter: int = 100,
    tol: float = 1e-10,
) -> ComparisonReport:
    """Fit each requested link and select the minimum-AIC converged fit.

    Ties break on lower deviance, then on the fixed order logit, probit,
    cloglog, cauchit.  A link whose fit raises a numerical error is
    marked failed and the comparison proceeds with the rest; warnings
    emitted during each fit are captured into that link's entry.
    """
    _, labels = _as_design(design)
    specs = design.specs if isinstance(design, DesignMatrix) else ()
    _check_counts(successes, trials)
    kinds = [link_for(k).name for k in links]
    if not kinds:
        raise ValueError("at least one link is required")

    fits = []
    for kind in kinds:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            try:
                result = fit_binomial(
                    design, successes, trials, kind,
                    max_iter=max_iter, tol=tol,
                )
                error = None
            except (linalg.RankDeficiencyError, ArithmeticError) as exc:
                result = None
                error = str(exc)
        fits.append(
            LinkFit(kind, result, error, tuple(str(w.message) for w in caught))
        )

    candidates = [f for f in fits if f.result is not None and f.result.converged]
    selected = None
    if candidates:
        best = min(
            candidates,
            key=lambda f: (
                f.result.aic,
                f.result.deviance,
                LINK_NAMES.index(f.link),
            ),
        )
        selected = best.link
    return ComparisonReport(tuple(labels), tuple(fits), selected, tuple(specs))
