"""Gamble parameter calibration.

Two coupled choices define the experiment's payoff distributions:

* ``mu = -c * sigma^2 / 4`` makes the growth-rate maximizer's growth rate
  zero, which keeps wealth near the origin where risk preferences are
  distinguishable.
* ``c`` is picked so the safe-payoff range just covers the indifference
  thresholds of the two most extreme agents at zero wealth, maximizing the
  probability that a safe draw splits opinions.

Since ``c`` determines ``mu`` and ``mu`` moves the thresholds, the pair is
found by fixed-point iteration; it converges in about ten steps and is
insensitive to the starting point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .agent import expected_transformed_utility
from .dynamics import GambleEnv
from .transform import yj_forward, yj_reexpress

__all__ = [
    "CalibrationError",
    "CalibrationResult",
    "zero_growth_mu",
    "indifference_lambda",
    "calibrate",
]


class CalibrationError(RuntimeError):
    """Raised when the fixed-point iterate leaves the valid parameter range."""


@dataclass(frozen=True)
class CalibrationResult:
    """Fixed point of the calibration recursion.

    ``lambda_p``/``lambda_q`` are the zero-wealth indifference thresholds of
    the two anchor agents at the calibrated environment; ``mu`` always
    satisfies ``mu = -c * sigma^2 / 4``.
    """

    mu: float
    c: float
    iterations: int
    converged: bool
    lambda_p: float
    lambda_q: float


def zero_growth_mu(c: float, sigma: float) -> float:
    """Risky-payoff mean giving the growth-rate maximizer zero growth.

    Half the time the maximizer takes the safe option (conditional mean
    ``(2*mu + c*sigma^2)/2``), half the time the risky one (mean ``mu``);
    the total vanishes at ``mu = -c * sigma^2 / 4``.
    """
    if not (0.0 <= c <= 1.0):
        raise ValueError(f"c={c!r} outside [0, 1]")
    if not (sigma > 0):
        raise ValueError(f"sigma={sigma!r} must be positive")
    return -c * sigma**2 / 4.0


def indifference_lambda(x, eta, env: GambleEnv, quad_nodes: int = 64, method: str = "auto"):
    """Safe payoff making an agent indifferent between the two options.

    Solves ``safe_utility_change(x, lam) = risky_expected_utility_change(x)``
    in closed form: applying ``Psi_gamma o Psi_eta^-1`` to the expected
    risky utility level and subtracting ``Psi_gamma(x)`` gives

    ``lambda_T = Psi_gamma(Psi_eta^-1(E_risky)) - Psi_gamma(x)``.

    For ``eta == gamma`` this is ``mu`` at every wealth.  Vectorized over
    ``x``.
    """
    s = yj_forward(x, env.gamma)
    ev = expected_transformed_utility(s, eta, env.gamma, env.mu, env.sigma, quad_nodes, method)
    return yj_reexpress(ev, eta, env.gamma) - s


def calibrate(
    gamma: float,
    eta_p: float,
    eta_q: float,
    sigma: float,
    c0: float = 0.1,
    tol: float = 1e-6,
    max_iter: int = 100,
    bound: str = "origin",
    quad_nodes: int = 64,
) -> CalibrationResult:
    """Find the zero-growth, informative-gamble parameter pair ``(mu, c)``.

    Iterates ``mu_k = -c_k sigma^2/4``; ``lambda_p, lambda_q`` = zero-wealth
    indifference thresholds of the anchor agents ``eta_p <= eta_q`` under
    ``(mu_k, c_k)``; then updates ``c`` from the thresholds until the change
    is below ``tol``.

    Parameters
    ----------
    bound : {"origin", "mean"}
        How the threshold spread is converted into ``c``:

        * ``"origin"`` (default): ``c = max(|lambda_p|, |lambda_q|)/sigma^2``.
          Reproduces the reference parameter values for gamma = 0.5
          (mu = c ~= 0.162, matching the published -0.166/0.166 within
          their rounding).
        * ``"mean"``: ``c = max(|lambda_p - mu|, |lambda_q - mu|)/sigma^2``,
          the smallest ``c`` with ``[lambda_p, lambda_q]`` inside the safe
          support ``[mu - c sigma^2, mu + c sigma^2]``.

    Raises
    ------
    CalibrationError
        If an iterate pushes ``c`` outside [0, 1].
    """
    if eta_p > eta_q:
        raise ValueError("eta_p must not exceed eta_q")
    if bound not in ("origin", "mean"):
        raise ValueError(f"unknown bound mode {bound!r}")
    if not (sigma > 0):
        raise ValueError(f"sigma={sigma!r} must be positive")
    if not (0.0 <= c0 <= 1.0):
        raise CalibrationError(f"starting point c0={c0!r} outside [0, 1]")

    def thresholds(mu_k: float, c_k: float):
        env = GambleEnv(gamma=gamma, mu=mu_k, sigma=sigma, c=c_k)
        lp = float(indifference_lambda(0.0, eta_p, env, quad_nodes))
        lq = float(indifference_lambda(0.0, eta_q, env, quad_nodes))
        return lp, lq

    c = float(c0)
    lp = lq = 0.0
    for k in range(1, max_iter + 1):
        mu = zero_growth_mu(c, sigma)
        lp, lq = thresholds(mu, c)
        if bound == "origin":
            c_next = max(abs(lp), abs(lq)) / sigma**2
        else:
            c_next = max(abs(lp - mu), abs(lq - mu)) / sigma**2
        if not (0.0 <= c_next <= 1.0):
            raise CalibrationError(
                f"calibration iterate c={c_next:.6g} left [0, 1] "
                f"(gamma={gamma}, eta_p={eta_p}, eta_q={eta_q}, sigma={sigma})"
            )
        if abs(c_next - c) < tol:
            mu = zero_growth_mu(c_next, sigma)
            lp, lq = thresholds(mu, c_next)
            return CalibrationResult(
                mu=mu, c=c_next, iterations=k, converged=True, lambda_p=lp, lambda_q=lq
            )
        c = c_next

    return CalibrationResult(
        mu=zero_growth_mu(c, sigma), c=c, iterations=max_iter, converged=False,
        lambda_p=lp, lambda_q=lq,
    )
