"""Closed-form payoffs, kernels, and condition checks."""

import dataclasses
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from common import DEFAULTS

from edgemarket import (
    ConditionCheck,
    ConditionReport,
    MarketParams,
    StrategyProfile,
    check_conditions,
    eccsp_profit,
    f_demand,
    g_quality,
    h_ad,
    mu_utility,
    payoff_vector,
    scsp_profit,
    wno_payoff,
)

curvatures = st.floats(min_value=0.05, max_value=0.95)
unit = st.floats(min_value=0.0, max_value=1.0)


class TestKernels:
    def test_f_at_one(self):
        assert f_demand(1.0, 0.8) == pytest.approx(5.0)

    def test_f_at_zero(self):
        assert f_demand(0.0, 0.5) == 0.0

    def test_f_quarter(self):
        # 0.25^0.5 / 0.5 = 1
        assert f_demand(0.25, 0.5) == pytest.approx(1.0)

    def test_g_full_effort(self):
        assert g_quality(1.0, 0.5) == pytest.approx(2.0)

    def test_g_zero_effort(self):
        assert g_quality(0.0, 0.5) == 0.0

    def test_g_quarter(self):
        assert g_quality(0.25, 0.5) == pytest.approx(1.0)

    def test_h_at_one(self):
        assert h_ad(1.0, 0.8) == pytest.approx(5.0)

    def test_h_at_zero(self):
        assert h_ad(0.0, 0.8) == 0.0

    def test_h_half(self):
        # independent arithmetic: 0.5^0.2 / 0.2
        expected = 0.5 ** 0.2 / 0.2
        assert expected == pytest.approx(4.35275, abs=1e-5)
        assert h_ad(0.5, 0.8) == pytest.approx(expected, abs=1e-5)

    @pytest.mark.parametrize("bad", [-0.1, 1.1])
    def test_domain_rejected(self, bad):
        with pytest.raises(ValueError):
            f_demand(bad, 0.5)
        with pytest.raises(ValueError):
            g_quality(bad, 0.5)
        with pytest.raises(ValueError):
            h_ad(bad, 0.5)

    @pytest.mark.parametrize("bad_curv", [0.0, 1.0, -0.5, 2.0])
    def test_curvature_rejected(self, bad_curv):
        with pytest.raises(ValueError):
            f_demand(0.5, bad_curv)

    @given(curv=curvatures, a=unit, b=unit)
    def test_f_non_decreasing(self, curv, a, b):
        lo, hi = min(a, b), max(a, b)
        assert f_demand(lo, curv) <= f_demand(hi, curv) + 1e-15

    @given(curv=curvatures, a=unit, b=unit)
    def test_f_concave(self, curv, a, b):
        mid = 0.5 * (a + b)
        chord = 0.5 * (f_demand(a, curv) + f_demand(b, curv))
        assert f_demand(mid, curv) >= chord - 1e-12

    @given(curv=curvatures, a=unit, b=unit)
    def test_g_monotone_concave(self, curv, a, b):
        lo, hi = min(a, b), max(a, b)
        assert g_quality(lo, curv) <= g_quality(hi, curv) + 1e-15
        mid = 0.5 * (a + b)
        chord = 0.5 * (g_quality(a, curv) + g_quality(b, curv))
        assert g_quality(mid, curv) >= chord - 1e-12

    @given(curv=curvatures, a=unit, b=unit)
    def test_h_monotone_concave(self, curv, a, b):
        lo, hi = min(a, b), max(a, b)
        assert h_ad(lo, curv) <= h_ad(hi, curv) + 1e-15
        mid = 0.5 * (a + b)
        chord = 0.5 * (h_ad(a, curv) + h_ad(b, curv))
        assert h_ad(mid, curv) >= chord - 1e-12


class TestUserUtility:
    def test_all_sponsored_breakeven(self, defaults):
        # cached terms vanish at x=1; 0.5*40/0.2 - 100 = 0
        assert mu_utility(1.0, 0.0, 1.0, 100.0, defaults) == pytest.approx(0.0, abs=1e-12)

    def test_all_cached(self, defaults):
        # sponsored terms vanish at x=0; 0.5*40*2/0.2 - 80 = 120
        assert mu_utility(0.0, 0.3, 1.0, 55.0, defaults) == pytest.approx(120.0)

    def test_interior_against_direct_arithmetic(self, defaults):
        # spelled-out evaluation, no shared helpers
        tau = 0.5
        expected = (
            tau * 40.0 / 0.2 * 0.5 ** 0.2
            + tau * 40.0 * 0.5 ** 0.5 / (0.2 * 0.5) * 0.5 ** 0.2
            - 0.5 * 80.0
            - 0.5 * 0.5 * 100.0
        )
        assert mu_utility(0.5, 0.5, 0.5, 100.0, defaults) == pytest.approx(
            expected, abs=1e-9
        )

    @given(x=st.floats(0.01, 0.99), t=st.floats(0.05, 1.0), theta=unit)
    def test_strictly_concave_in_x(self, x, t, theta):
        # second difference over equally spaced interior points is negative
        d = min(x, 1.0 - x) / 2
        u = lambda xx: mu_utility(xx, theta, t, 100.0, DEFAULTS)
        assert u(x + d) - 2 * u(x) + u(x - d) < 0.0

    @given(a=st.floats(0.02, 0.97), b=st.floats(0.02, 0.97))
    def test_increasing_when_fully_sponsored_uncached(self, a, b):
        lo, hi = min(a, b), max(a, b)
        u_lo = mu_utility(lo, 1.0, 0.0, 100.0, DEFAULTS)
        u_hi = mu_utility(hi, 1.0, 0.0, 100.0, DEFAULTS)
        if lo < hi:
            assert u_lo < u_hi


class TestProviderProfits:
    def test_scsp_no_traffic(self, defaults):
        assert scsp_profit(0.0, 0.7, 100.0, defaults) == 0.0

    def test_scsp_full_traffic_unsponsored(self, defaults):
        assert scsp_profit(1.0, 0.0, 100.0, defaults) == pytest.approx(600.0)

    def test_scsp_full_traffic_full_sponsorship(self, defaults):
        assert scsp_profit(1.0, 1.0, 100.0, defaults) == pytest.approx(500.0)

    def test_eccsp_no_cached_traffic(self, defaults):
        assert eccsp_profit(1.0, 0.0, defaults) == 0.0

    def test_eccsp_all_cached_full_effort(self, defaults):
        assert eccsp_profit(0.0, 1.0, defaults) == pytest.approx(480.0)

    def test_eccsp_interior(self, defaults):
        expected = 120.0 * (0.5 ** 0.2 / 0.2) - 60.0
        assert eccsp_profit(0.5, 0.5, defaults) == pytest.approx(expected)
        assert expected == pytest.approx(462.33, abs=0.01)

    def test_wno_zero_demand(self, defaults):
        assert wno_payoff(0.0, 100.0, defaults) == 0.0

    def test_wno_full_demand(self, defaults):
        assert wno_payoff(1.0, 100.0, defaults) == pytest.approx(99.0)

    def test_wno_interior(self, defaults):
        assert wno_payoff(0.5, 50.0, defaults) == pytest.approx(24.75)

    @given(x=unit, p=st.floats(0.0, 100.0), th1=unit, th2=unit, t1=unit, t2=unit)
    def test_wno_ignores_provider_strategies(self, x, p, th1, th2, t1, t2):
        a = payoff_vector(StrategyProfile(p=p, theta=th1, t=t1, x=x), DEFAULTS)
        b = payoff_vector(StrategyProfile(p=p, theta=th2, t=t2, x=x), DEFAULTS)
        assert a.wno_payoff == b.wno_payoff

    @given(x=unit, theta=unit, t=unit, p=st.floats(0.0, 100.0))
    def test_payoffs_finite_everywhere(self, x, theta, t, p):
        # boundary demand splits use the vanishing-term convention, so every
        # payoff stays finite across the whole strategy box
        v = payoff_vector(StrategyProfile(p=p, theta=theta, t=t, x=x), DEFAULTS)
        assert math.isfinite(v.mu_utility)
        assert math.isfinite(v.scsp_profit)
        assert math.isfinite(v.eccsp_profit)
        assert math.isfinite(v.wno_payoff)

    def test_payoff_vector_consistency(self, defaults):
        profile = StrategyProfile(p=100.0, theta=0.5, t=0.5, x=0.5)
        v = payoff_vector(profile, defaults)
        assert v.mu_utility == mu_utility(0.5, 0.5, 0.5, 100.0, defaults)
        assert v.scsp_profit == scsp_profit(0.5, 0.5, 100.0, defaults)
        assert v.eccsp_profit == eccsp_profit(0.5, 0.5, defaults)
        assert v.wno_payoff == wno_payoff(0.5, 100.0, defaults)


class TestConditions:
    def test_parameter_conditions_at_defaults(self, defaults):
        report = check_conditions(StrategyProfile(p=100.0, theta=0.5, t=0.5, x=0.5), defaults)
        assert report.cond_27.margin == pytest.approx(0.6, abs=1e-12)
        assert report.cond_27.holds
        assert report.cond_29.margin == pytest.approx(0.6, abs=1e-12)
        assert report.cond_29.holds

    def test_symmetric_point_condition(self, defaults):
        # x=0.5 with full effort doubles the cached branch of the margin
        report = check_conditions(StrategyProfile(p=100.0, theta=0.0, t=1.0, x=0.5), defaults)
        expected = (2.0 - 1.0) * 0.5 ** (-2.8)
        assert report.cond_26.margin == pytest.approx(expected)
        assert report.cond_26.holds

    def test_sponsorship_margin(self, defaults):
        report = check_conditions(StrategyProfile(p=100.0, theta=1.0, t=0.5, x=0.5), defaults)
        assert report.cond_25.margin == pytest.approx(108.9, abs=0.1)
        assert report.cond_25.holds

    def test_failing_parameter_condition(self, defaults):
        params = dataclasses.replace(defaults, gamma=0.1)
        report = check_conditions(StrategyProfile(p=1.0, theta=0.5, t=0.5, x=0.5), params)
        assert not report.cond_27.holds
        assert report.cond_27.margin == pytest.approx(-0.1)

    @pytest.mark.parametrize("x", [0.0, 1.0])
    def test_boundary_is_inapplicable_not_an_error(self, defaults, x):
        report = check_conditions(StrategyProfile(p=100.0, theta=0.5, t=0.5, x=x), defaults)
        assert not report.cond_25.applicable
        assert not report.cond_26.applicable
        assert math.isnan(report.cond_25.margin)
        assert report.cond_27.applicable and report.cond_29.applicable

    @given(
        x=st.floats(0.01, 0.99),
        t=unit,
        theta=unit,
        p=st.floats(0.0, 100.0),
    )
    def test_flags_match_margins(self, x, t, theta, p):
        report = check_conditions(StrategyProfile(p=p, theta=theta, t=t, x=x), DEFAULTS)
        for _, check in report.items():
            assert check.holds == (check.margin > 0.0)


class TestReportLogic:
    @staticmethod
    def _report(m25, m26, m27, m29, applicable=True):
        return ConditionReport(
            cond_25=ConditionCheck(m25, m25 > 0, applicable),
            cond_26=ConditionCheck(m26, m26 > 0, applicable),
            cond_27=ConditionCheck(m27, m27 > 0),
            cond_29=ConditionCheck(m29, m29 > 0),
        )

    def test_violated_tracks_applicable_failures(self):
        assert not self._report(1.0, 1.0, 0.6, 0.6).violated()
        assert self._report(-1.0, 1.0, 0.6, 0.6).violated()
        assert self._report(1.0, 1.0, -0.1, 0.6).violated()

    def test_inapplicable_point_conditions_do_not_violate(self):
        report = self._report(float("nan"), float("nan"), 0.6, 0.6, applicable=False)
        assert not report.violated()
        assert not report.point_conditions_violated()

    def test_point_condition_filter_ignores_parameter_conditions(self):
        report = self._report(1.0, 1.0, -0.1, -0.4)
        assert report.violated()
        assert not report.point_conditions_violated()
        assert self._report(1.0, -2.0, 0.6, 0.6).point_conditions_violated()


class TestParamValidation:
    @pytest.mark.parametrize(
        "field, value",
        [
            ("alpha", 0.0),
            ("alpha", 1.0),
            ("beta", -0.2),
            ("gamma", 1.5),
            ("l_a", 1.2),
            ("sigma_e", 0.0),
            ("c_handover", -1.0),
            ("C_cache", 0.0),
            ("w", 0.0),
            ("p_bar", 0.0),
        ],
    )
    def test_invalid_field_rejected(self, defaults, field, value):
        with pytest.raises(ValueError, match=field):
            dataclasses.replace(defaults, **{field: value})

    def test_tau_derived_from_ads(self, defaults):
        assert defaults.tau == pytest.approx(0.5)
        no_ads = dataclasses.replace(defaults, l_a=0.0)
        assert no_ads.tau == 1.0

    def test_profile_boxes(self):
        with pytest.raises(ValueError, match="theta"):
            StrategyProfile(p=1.0, theta=1.2, t=0.5, x=0.5)
        with pytest.raises(ValueError, match="p"):
            StrategyProfile(p=-1.0, theta=0.5, t=0.5, x=0.5)
