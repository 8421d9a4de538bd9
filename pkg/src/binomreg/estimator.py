"""scikit-learn estimator wrapper around the IRLS engine."""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .design import INTERCEPT_LABEL, DesignMatrix
from .glm import fit_binomial
from .links import link_for

__all__ = ["BinomialRegression"]


class BinomialRegression(BaseEstimator):
    """Binomial regression with a selectable link function, fit by IRLS.

    Models grouped success/trial counts: ``y`` is either an ``(n, 2)``
    array of ``[successes, trials]`` per row, or a 1-d 0/1 vector which
    is treated as one Bernoulli trial per row.  ``predict`` returns the
    fitted success probability for each row.

    Parameters
    ----------
    link : {"logit", "probit", "cloglog", "cauchit"}, default="logit"
        Link function mapping the mean probability to the linear
        predictor scale.
    fit_intercept : bool, default=True
        Prepend a constant column to the design.
    max_iter : int, default=100
        Cap on IRLS iterations.
    tol : float, default=1e-10
        Relative deviance-change convergence threshold.

    Attributes
    ----------
    coef_ : ndarray of shape (n_features,)
        Slope coefficients on the linear-predictor scale.
    intercept_ : float
        Intercept term (0.0 when ``fit_intercept=False``).
    std_errors_, z_values_, p_values_ : ndarray of shape (n_terms,)
        Wald inference for intercept (when present) plus slopes, in
        design order.
    stars_ : tuple of str
        Significance markers: *** at 1%, ** at 5%, * at 10%.
    log_likelihood_, deviance_, aic_ : float
        Goodness-of-fit statistics of the fitted model.
    n_iter_ : int
    converged_ : bool
    result_ : FitResult
        The full fit record from the underlying engine.

    Examples
    --------
    >>> import numpy as np
    >>> from binomreg import BinomialRegression
    >>> X = np.array([[0.0], [0.0], [1.0], [1.0]])
    >>> y = np.array([[1, 5], [2, 5], [4, 5], [5, 5]])
    >>> model = BinomialRegression(link="logit").fit(X, y)
    >>> model.predict(np.array([[0.0], [1.0]])).round(2)
    array([0.3, 0.9])
    """

    def __init__(self, link="logit", fit_intercept=True, max_iter=100, tol=1e-10):
        self.link = link
        self.fit_intercept = fit_intercept
        self.max_iter = max_iter
        self.tol = tol

    def _split_response(self, y):
        y = np.asarray(y)
        if y.ndim == 1:
            values = np.unique(y)
            if not np.all(np.isin(values, (0, 1))):
                raise ValueError(
                    "1-d y must be binary 0/1; pass an (n, 2) array of "
                    "[successes, trials] for grouped counts"
                )
            return y.astype(np.int64), np.ones(y.shape[0], dtype=np.int64)
        if y.ndim == 2 and y.shape[1] == 2:
            return y[:, 0].astype(np.int64), y[:, 1].astype(np.int64)
        raise ValueError("y must be 1-d binary or an (n, 2) [successes, trials] array")

    def fit(self, X, y):
        """Fit the model and return self."""
        feature_names = getattr(X, "columns", None)
        X = check_array(X, dtype=np.float64)
        successes, trials = self._split_response(y)
        if successes.shape[0] != X.shape[0]:
            raise ValueError("X and y have inconsistent numbers of rows")
        link_for(self.link)  # fail fast on unknown links
        if feature_names is not None:
            labels = [str(c) for c in feature_names]
        else:
            labels = [f"x{j}" for j in range(X.shape[1])]
        if self.fit_intercept:
            design = np.column_stack([np.ones(X.shape[0]), X])
            labels = [INTERCEPT_LABEL] + labels
        else:
            design = X
        result = fit_binomial(
            DesignMatrix(design, tuple(labels)),
            successes,
            trials,
            self.link,
            max_iter=self.max_iter,
            tol=self.tol,
        )
        self.result_ = result
        if self.fit_intercept:
            self.intercept_ = float(result.coefficients[0])
            self.coef_ = result.coefficients[1:]
        else:
            self.intercept_ = 0.0
            self.coef_ = result.coefficients
        self.std_errors_ = result.std_errors
        self.z_values_ = result.z_values
        self.p_values_ = result.p_values
        self.stars_ = result.stars
        self.log_likelihood_ = result.log_likelihood
        self.deviance_ = result.deviance
        self.aic_ = result.aic
        self.n_iter_ = result.iterations
        self.converged_ = result.converged
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        """Fitted success probability for each row of X."""
        check_is_fitted(self, "result_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, expected {self.n_features_in_}"
            )
        eta = X @ self.coef_ + self.intercept_
        fns = link_for(self.link)
        return np.asarray(fns.g_inv(eta), dtype=float)
