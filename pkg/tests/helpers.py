"""Shared independent oracles for the test suite.

Nothing in this module calls into binomreg's numerics: inverse links are
re-derived from stdlib math (erf, atan, exp), the grouped log-likelihood
is built from lgamma, and the maximizer is a damped Newton iteration on
numerical derivatives.  These exist so the package's IRLS / special
functions can be checked against an implementation that shares no code
with them.
"""

import math

import numpy as np

SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# independent inverse links and survival functions
# ---------------------------------------------------------------------------

def oracle_inv_link(name):
    if name == "logit":
        def inv(eta):
            eta = np.asarray(eta, dtype=float)
            t = np.exp(-np.abs(eta))
            return np.where(eta >= 0, 1.0 / (1.0 + t), t / (1.0 + t))
        return inv
    if name == "probit":
        return lambda eta: 0.5 * (1.0 + np.vectorize(math.erf)(np.asarray(eta) / SQRT2))
    if name == "cloglog":
        def inv(eta):
            with np.errstate(over="ignore"):
                return -np.expm1(-np.exp(np.asarray(eta, dtype=float)))
        return inv
    if name == "cauchit":
        return lambda eta: np.arctan(np.asarray(eta, dtype=float)) / np.pi + 0.5
    raise ValueError(name)


def oracle_survival(name, eta):
    """1 - g_inv(eta), evaluated directly (no subtraction from 1).

    The probit branch goes through erfc so the upper tail keeps relative
    accuracy; 0.5 * (1 + erf(-x)) would cancel there.
    """
    eta = np.asarray(eta, dtype=float)
    if name == "cloglog":
        with np.errstate(over="ignore"):
            return np.exp(-np.exp(eta))
    if name == "probit":
        return 0.5 * np.vectorize(math.erfc)(eta / SQRT2)
    return oracle_inv_link(name)(-eta)


# ---------------------------------------------------------------------------
# quadrature and bisection
# ---------------------------------------------------------------------------

def normal_cdf_quadrature(z: float, panels: int = 4000) -> float:
    """Phi(z) by Simpson integration of the density from -12 (or z) up."""
    lo = min(-12.0, z)
    grid = np.linspace(lo, z, 2 * panels + 1)
    dens = np.exp(-0.5 * grid * grid) / math.sqrt(2.0 * math.pi)
    h = (z - lo) / (2 * panels)
    simpson = dens[0] + dens[-1] + 4 * dens[1:-1:2].sum() + 2 * dens[2:-2:2].sum()
    return float(simpson * h / 3.0)


def bisect(fn, lo: float, hi: float, tol: float = 1e-13, max_iter: int = 200) -> float:
    flo = fn(lo)
    assert flo * fn(hi) <= 0, "bisection bracket does not straddle a root"
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = fn(mid)
        if flo * fmid <= 0:
            hi = mid
        else:
            lo, flo = mid, fmid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# independent grouped-binomial likelihood and its Newton maximizer
# ---------------------------------------------------------------------------

def oracle_log_likelihood(beta, x, y, n, inv_link):
    eta = x @ np.asarray(beta, dtype=float)
    p = np.clip(inv_link(eta), 1e-12, 1.0 - 1.0e-12)
    const = sum(
        math.lgamma(ni + 1) - math.lgamma(yi + 1) - math.lgamma(ni - yi + 1)
        for yi, ni in zip(y, n)
    )
    return float(np.sum(y * np.log(p) + (n - y) * np.log1p(-p))) + const


def numerical_gradient(fn, beta, h=1e-5):
    beta = np.asarray(beta, dtype=float)
    grad = np.zeros_like(beta)
    for j in range(beta.size):
        step = np.zeros_like(beta)
        step[j] = h
        grad[j] = (fn(beta + step) - fn(beta - step)) / (2 * h)
    return grad


def numerical_hessian(fn, beta, h=1e-4):
    beta = np.asarray(beta, dtype=float)
    p = beta.size
    hess = np.zeros((p, p))
    for i in range(p):
        for j in range(i, p):
            ei = np.zeros(p)
            ej = np.zeros(p)
            ei[i] = h
            ej[j] = h
            value = (
                fn(beta + ei + ej)
                - fn(beta + ei - ej)
                - fn(beta - ei + ej)
                + fn(beta - ei - ej)
            ) / (4 * h * h)
            hess[i, j] = hess[j, i] = value
    return hess


def newton_mle(x, y, n, link_name, *, tol=1e-9, max_iter=100):
    """Damped Newton maximization of the grouped binomial log-likelihood.

    Independent of the package: numerical gradient/Hessian on the oracle
    likelihood, starting from the zero vector, halving the step until the
    likelihood does not decrease.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = np.asarray(n, dtype=float)
    inv_link = oracle_inv_link(link_name)

    def ll(beta):
        return oracle_log_likelihood(beta, x, y, n, inv_link)

    beta = np.zeros(x.shape[1])
    current = ll(beta)
    for _ in range(max_iter):
        grad = numerical_gradient(ll, beta)
        hess = numerical_hessian(ll, beta)
        try:
            direction = np.linalg.solve(hess, grad)
        except np.linalg.LinAlgError:
            direction = grad / max(np.max(np.abs(grad)), 1.0)
        step = beta - direction
        scale = 1.0
        for _ in range(40):
            candidate = beta - scale * direction
            value = ll(candidate)
            if value >= current - 1e-12:
                break
            scale *= 0.5
        else:
            break
        moved = np.max(np.abs(candidate - beta))
        beta, current = candidate, value
        if moved < tol:
            break
    return beta


# ---------------------------------------------------------------------------
# random grouped datasets for engine tests
# ---------------------------------------------------------------------------

def random_grouped_data(seed, n_rows=500, link_name="logit", truth=None,
                        group_sizes=(1, 8)):
    """Synthetic grouped counts over 3 categorical variables (p = 6)."""
    from binomreg.design import Dataset, VariableSpec, build_design

    rng = np.random.default_rng(seed)
    specs = (
        VariableSpec("care", ("no", "yes"), "no"),
        VariableSpec("area", ("urban", "town", "rural"), "urban"),
        VariableSpec("wealth", ("poor", "middle", "rich"), "poor"),
    )
    cats = {
        "care": tuple(rng.choice(["no", "yes"], n_rows)),
        "area": tuple(rng.choice(["urban", "town", "rural"], n_rows)),
        "wealth": tuple(rng.choice(["poor", "middle", "rich"], n_rows)),
    }
    trials = rng.integers(group_sizes[0], group_sizes[1] + 1, n_rows)
    dataset = Dataset(np.zeros(n_rows, dtype=np.int64), trials, cats)
    dmat = build_design(dataset, specs)
    if truth is None:
        truth = np.array([-0.4, 0.6, -0.3, 0.45, -0.5, 0.35])
    pi = np.clip(oracle_inv_link(link_name)(dmat.matrix @ truth), 1e-12, 1 - 1e-12)
    successes = rng.binomial(trials, pi)
    dataset = Dataset(successes.astype(np.int64), trials, cats)
    return dataset, build_design(dataset, specs), np.asarray(truth, dtype=float)
