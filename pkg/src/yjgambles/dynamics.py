"""Gamble environment and wealth dynamics.

Wealth evolves by adding payoffs in transformed space:
``X' = Psi_gamma^(-1)(Psi_gamma(X) + payoff)``.  The safe payoff is a
uniform draw revealed before the decision; the risky payoff is a normal
draw revealed only after choosing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .transform import PARAM_MAX, PARAM_MIN, yj_forward, yj_inverse

__all__ = [
    "GambleEnv",
    "Trajectory",
    "apply_increment",
    "sample_safe_payoff",
    "sample_risky_payoff",
    "realized_growth_rate",
]


@dataclass(frozen=True)
class GambleEnv:
    """Gamble environment: dynamics parameter and payoff distributions.

    Attributes
    ----------
    gamma : float
        Dynamics transform parameter in [-1, 1] (experiments use [0, 1]).
    mu : float
        Mean of the transformed risky payoff.
    sigma : float
        Standard deviation of the transformed risky payoff (> 0).
    c : float
        Half-width factor in [0, 1]: the safe payoff is uniform on
        ``[mu - c*sigma^2, mu + c*sigma^2]``.
    """

    gamma: float
    mu: float
    sigma: float
    c: float

    def __post_init__(self):
        if not (PARAM_MIN <= self.gamma <= PARAM_MAX):
            raise ValueError(f"gamma={self.gamma!r} outside [{PARAM_MIN}, {PARAM_MAX}]")
        if not (self.sigma > 0):
            raise ValueError(f"sigma={self.sigma!r} must be positive")
        if not (0.0 <= self.c <= 1.0):
            raise ValueError(f"c={self.c!r} outside [0, 1]")

    @property
    def safe_low(self) -> float:
        return self.mu - self.c * self.sigma**2

    @property
    def safe_high(self) -> float:
        return self.mu + self.c * self.sigma**2


@dataclass
class Trajectory:
    """A wealth path under fixed dynamics, indexed by time step 0..T."""

    gamma: float
    wealth: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.wealth = np.asarray(self.wealth, dtype=float)
        if self.wealth.ndim != 1 or self.wealth.size == 0:
            raise ValueError("trajectory must be a non-empty 1-d wealth sequence")

    @property
    def horizon(self) -> int:
        return self.wealth.size - 1


def apply_increment(x, delta, gamma):
    """Apply a transformed-space payoff to wealth.

    Returns ``Psi_gamma^(-1)(Psi_gamma(x) + delta)``.  Increments compose
    additively in transformed space, so applying ``a`` then ``b`` equals
    applying ``a + b``.  Strictly increasing in ``delta``.
    """
    return yj_inverse(yj_forward(x, gamma) + np.asarray(delta, dtype=float), gamma)


def sample_safe_payoff(stream: np.random.Generator, env: GambleEnv, size=None):
    """Draw safe payoff(s): uniform on ``[mu - c*sigma^2, mu + c*sigma^2]``.

    The draw is revealed to agents before they decide.  With ``c == 0`` the
    interval degenerates and the payoff is ``mu`` with certainty.
    """
    if env.c == 0.0:
        return env.mu if size is None else np.full(size, env.mu)
    return stream.uniform(env.safe_low, env.safe_high, size=size)


def sample_risky_payoff(stream: np.random.Generator, env: GambleEnv, size=None):
    """Draw risky payoff(s): normal with mean ``mu`` and s.d. ``sigma``.

    The realization is revealed only after the risky option is chosen.
    """
    return stream.normal(env.mu, env.sigma, size=size)


def realized_growth_rate(traj: Trajectory) -> float:
    """Per-step growth of transformed wealth over a trajectory.

    Returns ``(Psi_gamma(X_T) - Psi_gamma(X_0)) / T``, the finite-horizon
    growth rate of the additive process ``Psi_gamma(X_t)``.
    """
    if traj.horizon < 1:
        raise ValueError("growth rate requires at least one step (T >= 1)")
    s = yj_forward(traj.wealth[[0, -1]], traj.gamma)
    return float((s[1] - s[0]) / traj.horizon)
