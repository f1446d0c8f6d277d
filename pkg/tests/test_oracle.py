"""Brute-force grid references: determinism, degenerate grids, solver agreement."""

import dataclasses

import pytest

from edgemarket import (
    GridSpec,
    best_response_x,
    deviation_gain,
    oracle_best_x,
    oracle_nash,
    oracle_price,
    solve_nash,
    solve_stackelberg_grid,
)


class TestGridSpec:
    def test_resolution_validated(self):
        with pytest.raises(ValueError, match="resolution"):
            GridSpec(1)

    def test_points_cover_endpoints(self):
        pts = GridSpec(5).points()
        assert pts[0] == 0.0 and pts[-1] == 1.0
        assert len(pts) == 5


class TestBestXOracle:
    def test_increasing_utility_picks_one(self, defaults):
        assert oracle_best_x(1.0, 0.0, 100.0, defaults, GridSpec(1001)) == 1.0

    def test_degenerate_two_point_grid(self, defaults):
        # only the endpoints are candidates
        x = oracle_best_x(0.5, 1.0, 10.0, defaults, GridSpec(2))
        assert x in (0.0, 1.0)

    def test_agrees_with_solver(self, defaults):
        n = 10001
        x_grid = oracle_best_x(0.5, 0.5, 100.0, defaults, GridSpec(n))
        x_solved = best_response_x(0.5, 0.5, 100.0, defaults).x_star
        assert abs(x_grid - x_solved) <= 2.0 / (n - 1)


class TestNashOracle:
    def test_dominant_strategies_without_revenue(self, defaults):
        params = dataclasses.replace(defaults, sigma_c=0.0)
        theta, t, is_mutual, eps = oracle_nash(100.0, params, GridSpec(21))
        assert (theta, t) == (0.0, 0.0)
        assert is_mutual
        assert eps == 0.0

    def test_agrees_with_solver_within_grid_bound(self, defaults):
        n = 51
        theta, t, _, _ = oracle_nash(100.0, defaults, GridSpec(n))
        nash = solve_nash(100.0, defaults)
        bound = 2.0 / (n - 1)
        assert abs(theta - nash.theta_star) <= bound
        assert abs(t - nash.t_star) <= bound

    def test_deterministic(self, defaults):
        a = oracle_nash(80.0, defaults, GridSpec(31))
        b = oracle_nash(80.0, defaults, GridSpec(31))
        assert a == b

    def test_deviation_gain_zero_at_dominant_profile(self, defaults):
        params = dataclasses.replace(defaults, sigma_c=0.0)
        assert deviation_gain(0.0, 0.0, 100.0, params, GridSpec(101)) == 0.0

    def test_deviation_gain_positive_off_equilibrium(self, defaults):
        gain = deviation_gain(0.0, 1.0, 100.0, defaults, GridSpec(101))
        assert gain > 1.0


class TestPriceOracle:
    def test_defaults_pick_the_cap(self, defaults):
        assert oracle_price(defaults, GridSpec(21)) == pytest.approx(100.0)

    def test_lower_cap(self, defaults):
        params = dataclasses.replace(defaults, p_bar=50.0)
        assert oracle_price(params, GridSpec(21)) == pytest.approx(50.0)

    def test_refining_grid_does_not_lose_value(self, defaults):
        def achieved(n):
            p = oracle_price(defaults, GridSpec(n))
            nash = solve_nash(p, defaults)
            return p * nash.x_star - defaults.w * nash.x_star**2

        assert achieved(22) >= achieved(11) - 1e-12

    def test_agrees_with_grid_solver(self, defaults):
        n = 21
        oracle_p = oracle_price(defaults, GridSpec(n))
        result = solve_stackelberg_grid(defaults, grid_points=n)
        assert abs(oracle_p - result.p_star) <= defaults.p_bar / (n - 1)
