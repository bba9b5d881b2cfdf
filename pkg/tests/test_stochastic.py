"""Censored-moment closed forms vs frozen values and numerical quadrature."""

import math

import numpy as np
import pytest
from scipy import integrate
from scipy import stats

from repo_options import (
    GaussianParams,
    ValidationError,
    censored_max_mean,
    censored_min_mean,
    censored_min_sd,
    put_payoff_mean,
)
from repo_options.stochastic import std_normal_cdf, std_normal_pdf

# Reference Gaussian used by the worked examples (rounded literal inputs).
EXAMPLE_G = GaussianParams(mean=100008.33, sd=1001.39)


# --- frozen spot values (independent 40-digit arithmetic, quadrature-checked) ---


def test_std_normal_pdf_frozen():
    assert std_normal_pdf(0.0) == pytest.approx(0.39894228040143268, rel=1e-14)
    assert std_normal_pdf(3.0) == pytest.approx(0.0044318484119380072, rel=1e-14)


def test_std_normal_cdf_frozen():
    assert std_normal_cdf(3.0) == pytest.approx(0.99865010196836991, rel=1e-14)
    assert std_normal_cdf(-3.0) == pytest.approx(0.0013498980316300945, rel=1e-13)
    # deep lower tail keeps relative accuracy (erfc form, no 1 - p cancellation)
    assert std_normal_cdf(-8.0) == pytest.approx(6.2209605742717841e-16, rel=1e-12)


def test_censored_min_mean_frozen():
    assert censored_min_mean(97003.92, EXAMPLE_G) == pytest.approx(
        97003.53763833655, rel=1e-12
    )
    assert censored_min_mean(98005.39, EXAMPLE_G) == pytest.approx(
        97996.891134637593, rel=1e-12
    )


def test_censored_min_sd_frozen():
    assert censored_min_sd(97003.92, EXAMPLE_G) == pytest.approx(
        14.27134230947157, rel=1e-10
    )
    assert censored_min_sd(98005.39, EXAMPLE_G) == pytest.approx(
        75.563377299606743, rel=1e-10
    )


def test_put_payoff_mean_frozen():
    assert put_payoff_mean(100008.33, EXAMPLE_G) == pytest.approx(
        399.49681017119067, rel=1e-12
    )


def test_censored_max_mean_frozen():
    assert censored_max_mean(100008.33, EXAMPLE_G) == pytest.approx(
        100407.82681017119, rel=1e-12
    )


def test_put_payoff_mean_deep_out_of_the_money():
    # ten sigmas below the mean the put mean is ~7.5e-22; float evaluation
    # cancels to a couple of digits, so only order of magnitude is asserted
    value = put_payoff_mean(EXAMPLE_G.mean - 10.0 * EXAMPLE_G.sd, EXAMPLE_G)
    assert 0.0 <= value < 1e-20


# --- dual route: numerical quadrature over the Gaussian density ---


def _quad(f, g: GaussianParams, strike: float) -> float:
    lo, hi = g.mean - 14.0 * g.sd, g.mean + 14.0 * g.sd
    value, _ = integrate.quad(
        lambda x: f(x) * stats.norm.pdf(x, g.mean, g.sd),
        lo,
        hi,
        points=[strike] if lo < strike < hi else None,
        limit=300,
    )
    return value


@pytest.mark.parametrize("offset", [-3.0, -2.0, -1.0, 0.0, 0.7, 2.5])
def test_censored_min_mean_matches_quadrature(offset):
    g = GaussianParams(mean=250.0, sd=40.0)
    strike = g.mean + offset * g.sd
    expected = _quad(lambda x: min(strike, x), g, strike)
    assert censored_min_mean(strike, g) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("offset", [-3.0, -1.0, 0.0, 1.5])
def test_censored_max_mean_matches_quadrature(offset):
    g = GaussianParams(mean=-12.0, sd=3.5)
    strike = g.mean + offset * g.sd
    expected = _quad(lambda x: max(strike, x), g, strike)
    assert censored_max_mean(strike, g) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("offset", [-3.0, -1.0, 0.0, 1.0, 2.0])
def test_censored_min_sd_matches_quadrature(offset):
    g = GaussianParams(mean=77.0, sd=9.0)
    strike = g.mean + offset * g.sd
    mean = _quad(lambda x: min(strike, x), g, strike)
    second = _quad(lambda x: min(strike, x) ** 2, g, strike)
    expected = math.sqrt(second - mean * mean)
    assert censored_min_sd(strike, g) == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize("offset", [-2.0, 0.0, 1.0, 3.0])
def test_put_payoff_mean_matches_quadrature(offset):
    g = GaussianParams(mean=500.0, sd=60.0)
    strike = g.mean + offset * g.sd
    expected = _quad(lambda x: max(strike - x, 0.0), g, strike)
    assert put_payoff_mean(strike, g) == pytest.approx(expected, rel=1e-9, abs=1e-12)


# --- algebraic properties over randomized parameters ---


def test_min_max_complementarity_randomized():
    rng = np.random.default_rng(20260818)
    for _ in range(1000):
        g = GaussianParams(
            mean=float(rng.uniform(-1e4, 1e5)), sd=float(rng.uniform(1e-3, 5e3))
        )
        strike = g.mean + float(rng.uniform(-6.0, 6.0)) * g.sd
        lhs = censored_min_mean(strike, g) + censored_max_mean(strike, g)
        rhs = strike + g.mean
        scale = abs(strike) + abs(g.mean) + g.sd
        assert abs(lhs - rhs) <= 1e-9 * scale


def test_put_complements_censored_min_randomized():
    # E[(K - X)^+] = K - E[min(K, X)] exactly
    rng = np.random.default_rng(7)
    for _ in range(500):
        g = GaussianParams(
            mean=float(rng.uniform(-500.0, 500.0)), sd=float(rng.uniform(0.01, 100.0))
        )
        strike = g.mean + float(rng.uniform(-5.0, 5.0)) * g.sd
        lhs = put_payoff_mean(strike, g)
        rhs = strike - censored_min_mean(strike, g)
        scale = abs(strike) + abs(g.mean) + g.sd
        assert abs(lhs - rhs) <= 1e-12 * scale


def test_censored_min_mean_monotone_in_strike():
    g = GaussianParams(mean=10.0, sd=2.0)
    strikes = [g.mean + k * g.sd for k in np.linspace(-5.0, 5.0, 41)]
    values = [censored_min_mean(k, g) for k in strikes]
    assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))
    # bounded above by both the strike and the mean
    for strike, value in zip(strikes, values):
        assert value <= min(strike, g.mean) + 1e-12


def test_censored_min_sd_bounds():
    rng = np.random.default_rng(11)
    for _ in range(500):
        g = GaussianParams(
            mean=float(rng.uniform(-100.0, 100.0)), sd=float(rng.uniform(0.01, 50.0))
        )
        strike = g.mean + float(rng.uniform(-8.0, 8.0)) * g.sd
        sd = censored_min_sd(strike, g)
        assert 0.0 <= sd <= g.sd * (1.0 + 1e-12)


def test_censored_min_sd_vanishes_when_fully_censored():
    g = GaussianParams(mean=1000.0, sd=10.0)
    assert censored_min_sd(g.mean - 8.0 * g.sd, g) < 1e-6 * g.sd


# --- degenerate and zero-volatility behavior ---


def test_zero_sd_branches_exact():
    g = GaussianParams(mean=42.0, sd=0.0)
    assert censored_min_mean(50.0, g) == 42.0
    assert censored_min_mean(40.0, g) == 40.0
    assert censored_max_mean(50.0, g) == 50.0
    assert censored_max_mean(40.0, g) == 42.0
    assert censored_min_sd(50.0, g) == 0.0
    assert put_payoff_mean(50.0, g) == 8.0
    assert put_payoff_mean(40.0, g) == 0.0


@pytest.mark.parametrize("strike_scale", [0.7, 1.0, 1.3])
def test_tiny_sd_continuous_with_degenerate_limit(strike_scale):
    mean = 1234.5
    g = GaussianParams(mean=mean, sd=1e-8 * mean)
    strike = strike_scale * mean
    assert abs(censored_min_mean(strike, g) - min(strike, mean)) <= 1e-6 * mean
    assert abs(censored_max_mean(strike, g) - max(strike, mean)) <= 1e-6 * mean
    assert abs(put_payoff_mean(strike, g) - max(strike - mean, 0.0)) <= 1e-6 * mean


# --- validation ---


def test_gaussian_params_rejects_bad_fields():
    with pytest.raises(ValidationError):
        GaussianParams(mean=math.nan, sd=1.0)
    with pytest.raises(ValidationError):
        GaussianParams(mean=0.0, sd=-1.0)
    with pytest.raises(ValidationError):
        GaussianParams(mean=math.inf, sd=1.0)
    with pytest.raises(ValidationError):
        GaussianParams(mean=0.0, sd=math.nan)
