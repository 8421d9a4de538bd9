"""Link bundle correctness: round trips, derivatives, shape properties."""

import math

import numpy as np
import pytest

from binomreg.links import LINK_NAMES, clamp_mu, link_for
from helpers import oracle_survival

H = 1e-6


def two_sided_fd(name, etas):
    """d/deta g_inv by central differences, using the survival form in the
    upper half so float64 saturation of g_inv near 1 cannot zero it out."""
    fns = link_for(name)
    low = (np.asarray(fns.g_inv(etas + H)) - np.asarray(fns.g_inv(etas - H))) / (2 * H)
    high = -(oracle_survival(name, etas + H) - oracle_survival(name, etas - H)) / (2 * H)
    return np.where(np.asarray(fns.g_inv(etas)) <= 0.5, low, high)


class TestRegistry:
    def test_exactly_four_links(self):
        assert LINK_NAMES == ("logit", "probit", "cloglog", "cauchit")

    def test_lookup_case_and_errors(self):
        assert link_for("LOGIT").name == "logit"
        with pytest.raises(ValueError, match="unknown link"):
            link_for("identity")


class TestPointValues:
    def test_symmetric_links_map_half_to_zero(self):
        for name in ("logit", "probit", "cauchit"):
            assert float(link_for(name).g(0.5)) == pytest.approx(0.0, abs=1e-15)

    def test_cloglog_zero_point(self):
        assert float(link_for("cloglog").g(1.0 - math.exp(-1.0))) == pytest.approx(
            0.0, abs=1e-14
        )

    def test_cauchit_quartile(self):
        assert float(link_for("cauchit").g_inv(1.0)) == pytest.approx(0.75, rel=1e-14)

    def test_logit_three_quarters(self):
        # direct formula oracle: log(0.75/0.25) = log 3
        assert float(link_for("logit").g(0.75)) == pytest.approx(
            math.log(3.0), rel=1e-14
        )


class TestRoundTrip:
    @pytest.mark.parametrize("name", LINK_NAMES)
    def test_g_inv_of_g(self, name):
        fns = link_for(name)
        p = np.linspace(1e-3, 1.0 - 1e-3, 1000)
        back = np.asarray(fns.g_inv(fns.g(p)), dtype=float)
        assert np.max(np.abs(back - p)) < 1e-10


class TestMonotonicity:
    @pytest.mark.parametrize("name", LINK_NAMES)
    def test_g_inv_increasing(self, name):
        fns = link_for(name)
        grid = (
            np.linspace(-1e4, 1e4, 10_000)
            if name == "cauchit"
            else np.linspace(-10.0, 10.0, 10_000)
        )
        values = np.asarray(fns.g_inv(grid), dtype=float)
        assert np.all(np.diff(values) >= 0.0)
        assert np.all((values >= 0.0) & (values <= 1.0))
        # strict wherever float64 can still resolve the change
        interior = (values > 1e-12) & (values < 1.0 - 1e-12)
        idx = np.where(interior[:-1] & interior[1:])[0]
        assert np.all(values[idx + 1] > values[idx])


class TestDerivative:
    @pytest.mark.parametrize("name", LINK_NAMES)
    def test_mu_eta_matches_finite_difference(self, name):
        etas = np.linspace(-5.0, 5.0, 501)
        fd = two_sided_fd(name, etas)
        analytic = np.asarray(link_for(name).mu_eta(etas), dtype=float)
        assert np.max(np.abs(analytic - fd) / np.abs(fd)) < 1e-6

    @pytest.mark.parametrize("name", LINK_NAMES)
    def test_mu_eta_positive(self, name):
        etas = np.linspace(-30.0, 30.0, 401)
        values = np.asarray(link_for(name).mu_eta(etas), dtype=float)
        assert np.all(values >= 0.0)
        assert np.all(values[np.abs(etas) <= 5] > 0.0)


class TestSymmetry:
    @pytest.mark.parametrize("name", ("logit", "probit", "cauchit"))
    def test_symmetric_links(self, name):
        fns = link_for(name)
        etas = np.linspace(-8.0, 8.0, 201)
        lhs = np.asarray(fns.g_inv(-etas), dtype=float)
        rhs = 1.0 - np.asarray(fns.g_inv(etas), dtype=float)
        assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_cloglog_is_asymmetric(self):
        # the asymmetry is the point of this link
        fns = link_for("cloglog")
        lhs = float(fns.g_inv(-1.0))
        rhs = 1.0 - float(fns.g_inv(1.0))
        assert abs(lhs - rhs) > 0.1


class TestClampMu:
    def test_interior_unchanged(self):
        assert clamp_mu(0.5) == 0.5

    def test_boundaries(self):
        assert clamp_mu(0.0) == 1e-10
        assert clamp_mu(1.0) == 1.0 - 1e-10

    def test_vectorized(self):
        out = clamp_mu(np.array([-5.0, 0.3, 2.0]))
        np.testing.assert_array_equal(out, [1e-10, 0.3, 1.0 - 1e-10])


class TestExtremeEta:
    @pytest.mark.parametrize("name", LINK_NAMES)
    def test_no_overflow_at_huge_eta(self, name):
        fns = link_for(name)
        out = np.asarray(fns.g_inv(np.array([-800.0, 800.0])), dtype=float)
        assert np.all(np.isfinite(out))
        if name == "cauchit":
            # heavy tails: mass ~ 1/(pi*|eta|), nowhere near saturated
            assert out[0] == pytest.approx(1.0 / (np.pi * 800.0), rel=1e-6)
        else:
            assert out[0] <= 1e-10 and out[1] >= 1.0 - 1e-10

    def test_cloglog_small_probabilities_survive(self):
        # expm1 form keeps p ~ exp(eta) instead of flushing to 0
        val = float(link_for("cloglog").g_inv(-30.0))
        assert val == pytest.approx(math.exp(-30.0), rel=1e-12)
