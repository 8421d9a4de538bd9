"""The four binomial link functions as immutable bundles.

Each bundle carries the forward map ``g`` from mean probability to the
linear-predictor scale, the inverse map ``g_inv`` (the tolerance CDF), and
``mu_eta``, the derivative of the inverse map needed by the IRLS weights:

    logit    g(p) = log(p/(1-p))        g_inv(e) = 1/(1+exp(-e))
    probit   g(p) = Phi^-1(p)           g_inv(e) = Phi(e)
    cloglog  g(p) = log(-log(1-p))      g_inv(e) = 1 - exp(-exp(e))
    cauchit  g(p) = tan(pi*(p-1/2))     g_inv(e) = arctan(e)/pi + 1/2

The cauchit scale is fixed at 1 (any other scale is absorbed into the
coefficients), and cloglog is the self-consistent complementary pair so
that g_inv(g(p)) = p holds.  Everything evaluates elementwise on scalars
or arrays.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import special

__all__ = ["LinkFns", "LINK_NAMES", "link_for", "clamp_mu", "MU_EPS"]

MU_EPS = 1e-10


def clamp_mu(p):
    """Clamp a probability to [MU_EPS, 1 - MU_EPS] to keep IRLS weights finite."""
    return np.clip(p, MU_EPS, 1.0 - MU_EPS)


@dataclass(frozen=True)
class LinkFns:
    """One link: forward map, inverse (tolerance CDF), and its derivative."""

    name: str
    g: Callable
    g_inv: Callable
    mu_eta: Callable


def _logit(p):
    return np.log(p) - np.log1p(-np.asarray(p, dtype=float))


def _logit_inv(eta):
    # exp(-|eta|) form never overflows
    eta = np.asarray(eta, dtype=float)
    t = np.exp(-np.abs(eta))
    return np.where(eta >= 0.0, 1.0 / (1.0 + t), t / (1.0 + t))


def _logit_mu_eta(eta):
    t = np.exp(-np.abs(np.asarray(eta, dtype=float)))
    return t / (1.0 + t) ** 2


def _cloglog(p):
    return np.log(-np.log1p(-np.asarray(p, dtype=float)))


def _cloglog_inv(eta):
    # -expm1 keeps tiny probabilities exact as eta -> -inf
    with np.errstate(over="ignore"):
        return -np.expm1(-np.exp(np.asarray(eta, dtype=float)))


def _cloglog_mu_eta(eta):
    eta = np.asarray(eta, dtype=float)
    with np.errstate(over="ignore"):
        return np.exp(eta - np.exp(eta))


def _cauchit(p):
    return np.tan(np.pi * (np.asarray(p, dtype=float) - 0.5))


def _cauchit_inv(eta):
    return np.arctan(np.asarray(eta, dtype=float)) / np.pi + 0.5


def _cauchit_mu_eta(eta):
    eta = np.asarray(eta, dtype=float)
    return 1.0 / (np.pi * (1.0 + eta * eta))


_REGISTRY = {
    "logit": LinkFns("logit", _logit, _logit_inv, _logit_mu_eta),
    "probit": LinkFns(
        "probit", special.norm_quantile, special.norm_cdf, special.norm_pdf
    ),
    "cloglog": LinkFns("cloglog", _cloglog, _cloglog_inv, _cloglog_mu_eta),
    "cauchit": LinkFns("cauchit", _cauchit, _cauchit_inv, _cauchit_mu_eta),
}

LINK_NAMES = tuple(_REGISTRY)


def link_for(kind) -> LinkFns:
    """Look up a link bundle by its lowercase name."""
    if isinstance(kind, LinkFns):
        return kind
    try:
        return _REGISTRY[str(kind).lower()]
    except KeyError:
        raise ValueError(
            f"unknown link {kind!r}; expected one of {', '.join(LINK_NAMES)}"
        ) from None
