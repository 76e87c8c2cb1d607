import numpy as np
import pytest

from yjgambles.dynamics import (
    GambleEnv,
    Trajectory,
    apply_increment,
    realized_growth_rate,
    sample_risky_payoff,
    sample_safe_payoff,
)

FIG4 = dict(gamma=0.5, mu=-0.166, sigma=2.0, c=0.166)


def test_env_validation():
    GambleEnv(**FIG4)
    with pytest.raises(ValueError):
        GambleEnv(gamma=1.5, mu=0.0, sigma=1.0, c=0.1)
    with pytest.raises(ValueError):
        GambleEnv(gamma=0.5, mu=0.0, sigma=0.0, c=0.1)
    with pytest.raises(ValueError):
        GambleEnv(gamma=0.5, mu=0.0, sigma=1.0, c=1.2)


def test_safe_support_bounds():
    env = GambleEnv(**FIG4)
    assert env.safe_low == pytest.approx(-0.166 - 0.166 * 4.0)
    assert env.safe_high == pytest.approx(-0.166 + 0.166 * 4.0)


def test_apply_increment_additive():
    x = np.linspace(-5.0, 5.0, 11)
    assert np.allclose(apply_increment(x, 0.3, 0.0), x + 0.3, rtol=1e-14)


def test_apply_increment_examples():
    assert apply_increment(0.0, np.log(2.0), 1.0) == pytest.approx(1.0, rel=1e-14)
    for g in (0.0, 0.25, 1.0):
        assert apply_increment(2.5, 0.0, g) == pytest.approx(2.5, rel=1e-14)


@pytest.mark.parametrize("g", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_increments_compose_additively(g):
    x = np.linspace(-20.0, 20.0, 41)
    one = apply_increment(apply_increment(x, 0.7, g), -1.3, g)
    both = apply_increment(x, 0.7 - 1.3, g)
    assert np.allclose(one, both, rtol=1e-10, atol=1e-10)


def test_multiplicative_form_at_one():
    x = np.linspace(0.0, 50.0, 21)
    d = 0.4
    assert np.allclose(apply_increment(x, d, 1.0), (x + 1.0) * np.exp(d) - 1.0,
                       rtol=1e-10)


def test_safe_payoff_degenerate():
    env = GambleEnv(gamma=0.5, mu=-0.25, sigma=2.0, c=0.0)
    rng = np.random.default_rng(0)
    assert sample_safe_payoff(rng, env) == -0.25
    assert np.all(sample_safe_payoff(rng, env, size=10) == -0.25)


def test_safe_payoff_moments_and_support():
    env = GambleEnv(**FIG4)
    rng = np.random.default_rng(1234)
    draws = sample_safe_payoff(rng, env, size=1_000_000)
    assert np.all(draws >= env.safe_low) and np.all(draws <= env.safe_high)
    width = env.safe_high - env.safe_low
    se_mean = width / np.sqrt(12.0) / np.sqrt(draws.size)
    assert abs(draws.mean() - env.mu) < 3.0 * se_mean
    # sample variance vs uniform variance width^2/12; Var(S^2) ~= w^4/(180 n)
    var_target = width**2 / 12.0
    se_var = width**2 / np.sqrt(180.0 * draws.size)
    assert abs(draws.var(ddof=1) - var_target) < 3.0 * se_var


def test_risky_payoff_moments_and_reproducibility():
    env = GambleEnv(**FIG4)
    draws = sample_risky_payoff(np.random.default_rng(99), env, size=1_000_000)
    se_mean = env.sigma / np.sqrt(draws.size)
    assert abs(draws.mean() - env.mu) < 3.0 * se_mean
    se_var = env.sigma**2 * np.sqrt(2.0 / draws.size)
    assert abs(draws.var(ddof=1) - env.sigma**2) < 3.0 * se_var
    again = sample_risky_payoff(np.random.default_rng(99), env, size=1_000_000)
    assert np.array_equal(draws, again)


@pytest.mark.parametrize("g", [0.0, 0.5, 1.0])
def test_growth_rate_constant_safe_payoffs(g):
    lam = -0.11
    x = 0.0
    wealth = [x]
    for _ in range(40):
        x = apply_increment(x, lam, g)
        wealth.append(x)
    rate = realized_growth_rate(Trajectory(gamma=g, wealth=np.array(wealth)))
    assert rate == pytest.approx(lam, rel=1e-10, abs=1e-12)


def test_growth_rate_additive_is_mean_increment():
    rng = np.random.default_rng(7)
    steps = rng.normal(0.0, 1.0, 100)
    wealth = np.concatenate([[0.0], np.cumsum(steps)])
    rate = realized_growth_rate(Trajectory(gamma=0.0, wealth=wealth))
    assert rate == pytest.approx((wealth[-1] - wealth[0]) / 100.0, rel=1e-14)


def test_growth_rate_needs_a_step():
    with pytest.raises(ValueError):
        realized_growth_rate(Trajectory(gamma=0.0, wealth=np.array([1.0])))
    with pytest.raises(ValueError):
        Trajectory(gamma=0.0, wealth=np.array([]))
