"""Decision-convergence diagnostics.

As wealth moves away from zero, agents with different utility parameters
under dynamics ``gamma < 1`` converge to the growth-rate maximizer's
choices: their indifference thresholds approach ``mu``.  At ``gamma = 1``
the effect disappears.  This module quantifies the phenomenon through
threshold curves, Taylor-coefficient ratios, disagreement probabilities,
and a closed-form two-outcome example with a logarithmic agent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .calibration import indifference_lambda
from .dynamics import GambleEnv
from .transform import _check_param

__all__ = [
    "ConvergenceCurve",
    "lambda_T_curve",
    "first_coefficient",
    "second_coefficient",
    "taylor_ratio",
    "disagreement_probability",
    "worked_example_threshold",
]


@dataclass(frozen=True)
class ConvergenceCurve:
    """Indifference thresholds over a wealth grid for one agent."""

    wealth_grid: np.ndarray = field(repr=False)
    lambda_values: np.ndarray = field(repr=False)
    eta: float
    env: GambleEnv

    def __post_init__(self):
        if self.wealth_grid.shape != self.lambda_values.shape:
            raise ValueError("grid and threshold arrays must have equal length")
        if np.any(np.diff(self.wealth_grid) <= 0):
            raise ValueError("wealth grid must be strictly increasing")


def lambda_T_curve(wealth_grid, eta, env: GambleEnv, quad_nodes: int = 64) -> ConvergenceCurve:
    """Evaluate the indifference threshold pointwise over a wealth grid."""
    grid = np.asarray(wealth_grid, dtype=float)
    lam = np.asarray(indifference_lambda(grid, eta, env, quad_nodes))
    return ConvergenceCurve(wealth_grid=grid, lambda_values=lam, eta=eta, env=env)


def first_coefficient(x, eta, gamma):
    """W'(0) for ``W(z) = Psi_eta(Psi_gamma^-1(Psi_gamma(x) + z))``, x > 0.

    Closed form ``(x+1)^(gamma-eta)``; the chain rule gives
    ``W'(z) = Psi'_eta(u)/Psi'_gamma(u)`` with ``u`` the updated wealth.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("Taylor coefficients are derived on the positive branch (x > 0)")
    _check_param(eta, "eta")
    _check_param(gamma, "gamma")
    out = (x + 1.0) ** (gamma - eta)
    return float(out) if out.ndim == 0 else out


def second_coefficient(x, eta, gamma):
    """W''(0) in closed form: ``(gamma-eta) * (x+1)^(2*gamma-eta-1)``, x > 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("Taylor coefficients are derived on the positive branch (x > 0)")
    _check_param(eta, "eta")
    _check_param(gamma, "gamma")
    out = (gamma - eta) * (x + 1.0) ** (2.0 * gamma - eta - 1.0)
    return float(out) if out.ndim == 0 else out


def taylor_ratio(x, eta, gamma):
    """Ratio ``W''(0)/W'(0) = (gamma-eta) * (x+1)^(gamma-1)`` for x > 0.

    Measures how fast the second-order term loses (or keeps) influence as
    wealth grows: for ``gamma < 1`` the ratio decays like a power of wealth
    and decisions converge to the growth-rate maximizer's; for
    ``gamma = 1`` it is constant in ``x`` and convergence fails.
    """
    return second_coefficient(x, eta, gamma) / first_coefficient(x, eta, gamma)


def disagreement_probability(x, eta_a, eta_b, env: GambleEnv, quad_nodes: int = 64) -> float:
    """Probability a uniform safe draw separates two agents' decisions.

    The agents disagree exactly when the safe payoff lands between their
    indifference thresholds, so the probability is the length of the
    threshold interval clipped to the safe support, divided by the support
    width.  Zero when ``c == 0`` or the agents share a threshold.
    """
    if env.c == 0.0:
        return 0.0
    la = float(indifference_lambda(x, eta_a, env, quad_nodes))
    lb = float(indifference_lambda(x, eta_b, env, quad_nodes))
    lo, hi = min(la, lb), max(la, lb)
    overlap = max(0.0, min(hi, env.safe_high) - max(lo, env.safe_low))
    return overlap / (env.safe_high - env.safe_low)


def worked_example_threshold(X) -> float:
    """Two-outcome example: payoff making a log-utility agent indifferent.

    A logarithmic agent at wealth ``X > 0`` weighs a gamble paying +10 or
    +100 with equal probability against a certain payoff ``x``.  Expected
    log utility equates at

    ``x* = sqrt((X+55)^2 - 2025) - X``

    (the geometric mean ``sqrt((X+10)(X+100))`` minus current wealth).  As
    ``X`` grows, ``x* -> 55``, the linear agent's threshold: at large
    wealth the two agents become indistinguishable.
    """
    X = np.asarray(X, dtype=float)
    if np.any(X <= 0):
        raise ValueError("the logarithmic agent requires positive wealth")
    out = np.sqrt((X + 55.0) ** 2 - 2025.0) - X
    return float(out) if out.ndim == 0 else out
