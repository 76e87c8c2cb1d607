"""Yeo-Johnson and isoelastic transform families.

The Yeo-Johnson transform is a four-branch power transform defined on all
reals.  For parameters in [-1, 1] it is strictly increasing with codomain
equal to the whole real line, so its inverse is well-defined everywhere.
The parameter interpolates between additive behaviour (identity at 0) and
asymptotically multiplicative behaviour (log-like at 1 on the positive
half-line).  These functions double as wealth-dynamics transforms and as
agent utility functions throughout the package.

All functions accept scalars or array_likes and broadcast elementwise;
scalar input yields a Python float.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "PARAM_MIN",
    "PARAM_MAX",
    "SINGULAR_EPS",
    "yj_forward",
    "yj_inverse",
    "yj_derivative",
    "yj_reexpress",
    "isoelastic",
]

PARAM_MIN = -1.0
PARAM_MAX = 1.0

# Exponents closer than this to the singular values switch to the exact
# logarithmic/exponential limit branch to avoid catastrophic cancellation.
SINGULAR_EPS = 1e-12


def _check_param(p: float, name: str = "p") -> float:
    p = float(p)
    if not (PARAM_MIN <= p <= PARAM_MAX) or not np.isfinite(p):
        raise ValueError(
            f"{name}={p!r} outside [{PARAM_MIN}, {PARAM_MAX}]; the inverse "
            "transform is only defined on that range"
        )
    return p


def _prepare(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _finish(out: np.ndarray, scalar: bool):
    return float(out) if scalar else out


def yj_forward(x, p):
    """Evaluate the Yeo-Johnson transform at wealth ``x`` with parameter ``p``.

    Branches::

        x >= 0, p != 1:  ((x+1)^(1-p) - 1) / (1-p)
        x >= 0, p == 1:  log(x+1)
        x <  0, p != -1: (1 - (1-x)^(1+p)) / (1+p)
        x <  0, p == -1: -log(1-x)

    Continuous and strictly increasing in ``x`` with a continuous second
    derivative at the branch junction x = 0.

    Parameters
    ----------
    x : array_like
        Wealth, any real value.
    p : float
        Transform parameter in [-1, 1].

    Returns
    -------
    float or ndarray
        Transformed wealth.
    """
    p = _check_param(p)
    x, scalar = _prepare(x)
    if p == 0.0:
        return _finish(x.copy(), scalar)
    out = np.empty_like(x)

    pos = x >= 0
    a = 1.0 - p
    if abs(a) < SINGULAR_EPS:
        out[pos] = np.log1p(x[pos])
    else:
        out[pos] = np.expm1(a * np.log1p(x[pos])) / a

    neg = ~pos
    b = 1.0 + p
    if abs(b) < SINGULAR_EPS:
        out[neg] = -np.log1p(-x[neg])
    else:
        out[neg] = -np.expm1(b * np.log1p(-x[neg])) / b

    return _finish(out, scalar)


def yj_inverse(y, p):
    """Invert the Yeo-Johnson transform: find ``x`` with Psi_p(x) = y.

    The transform fixes 0 and preserves sign, so the branch split of the
    inverse is at y = 0.  Defined for every real ``y`` when ``p`` is in
    [-1, 1].

    Parameters
    ----------
    y : array_like
        Transformed wealth.
    p : float
        Transform parameter in [-1, 1].

    Returns
    -------
    float or ndarray
        Wealth ``x`` such that ``yj_forward(x, p) == y``.
    """
    p = _check_param(p)
    y, scalar = _prepare(y)
    if p == 0.0:
        return _finish(y.copy(), scalar)
    out = np.empty_like(y)

    pos = y >= 0
    a = 1.0 - p
    if abs(a) < SINGULAR_EPS:
        out[pos] = np.expm1(y[pos])
    else:
        # (1 + a*y)^(1/a) - 1, with 1 + a*y >= 1 on this branch
        out[pos] = np.expm1(np.log1p(a * y[pos]) / a)

    neg = ~pos
    b = 1.0 + p
    if abs(b) < SINGULAR_EPS:
        out[neg] = -np.expm1(-y[neg])
    else:
        # 1 - (1 - b*y)^(1/b), with 1 - b*y > 1 on this branch
        out[neg] = -np.expm1(np.log1p(-b * y[neg]) / b)

    return _finish(out, scalar)


def yj_derivative(x, p):
    """First derivative of the Yeo-Johnson transform with respect to wealth.

    Equals ``(x+1)^(-p)`` for x >= 0 and ``(1-x)^p`` for x < 0; both branches
    evaluate to 1 at x = 0.  Valid for all p in [-1, 1] including the
    logarithmic limits.
    """
    p = _check_param(p)
    x, scalar = _prepare(x)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = (x[pos] + 1.0) ** (-p)
    out[~pos] = (1.0 - x[~pos]) ** p
    return _finish(out, scalar)


def yj_reexpress(y, p_in, p_out):
    """Re-express a transformed-wealth coordinate in another family member.

    Computes ``Psi_{p_out}(Psi_{p_in}^(-1)(y))`` in a single fused step.
    On each branch the composition collapses to one power (or log/exp in the
    singular limits), which is both faster and slightly more accurate than
    chaining :func:`yj_inverse` and :func:`yj_forward`.  When
    ``p_in == p_out`` the composition is the identity.

    Parameters
    ----------
    y : array_like
        Coordinate in the ``p_in`` transform's scale.
    p_in, p_out : float
        Source and target transform parameters, each in [-1, 1].

    Returns
    -------
    float or ndarray
        The same point expressed on the ``p_out`` scale.
    """
    p_in = _check_param(p_in, "p_in")
    p_out = _check_param(p_out, "p_out")
    y, scalar = _prepare(y)
    if p_in == p_out:
        return _finish(y.copy(), scalar)
    out = np.empty_like(y)

    pos = y >= 0
    a, b = 1.0 - p_in, 1.0 - p_out
    yp = y[pos]
    if abs(a) < SINGULAR_EPS and abs(b) < SINGULAR_EPS:
        out[pos] = yp
    elif abs(a) < SINGULAR_EPS:
        out[pos] = np.expm1(b * yp) / b
    elif abs(b) < SINGULAR_EPS:
        out[pos] = np.log1p(a * yp) / a
    else:
        out[pos] = np.expm1((b / a) * np.log1p(a * yp)) / b

    neg = ~pos
    a, b = 1.0 + p_in, 1.0 + p_out
    yn = y[neg]
    if abs(a) < SINGULAR_EPS and abs(b) < SINGULAR_EPS:
        out[neg] = yn
    elif abs(a) < SINGULAR_EPS:
        out[neg] = -np.expm1(-b * yn) / b
    elif abs(b) < SINGULAR_EPS:
        out[neg] = -np.log1p(-a * yn) / a
    else:
        out[neg] = -np.expm1((b / a) * np.log1p(-a * yn)) / b

    return _finish(out, scalar)


def isoelastic(x, p):
    """Isoelastic (constant relative risk aversion) utility of wealth.

    ``(x^(1-p) - 1) / (1-p)`` for p != 1 and ``log(x)`` for p = 1.  Only
    defined for strictly positive wealth: for p in (0, 1) the family is
    bounded below at x = 0 by ``-1/(1-p)`` and becomes complex for negative
    arguments, which is precisely why the Yeo-Johnson variant is used for
    wealth processes that may go negative.

    Raises
    ------
    ValueError
        If any ``x <= 0`` or ``p`` is outside [-1, 1].
    """
    p = _check_param(p)
    x, scalar = _prepare(x)
    if np.any(x <= 0):
        raise ValueError("isoelastic utility requires strictly positive wealth")
    a = 1.0 - p
    if abs(a) < SINGULAR_EPS:
        out = np.log(x)
    else:
        out = np.expm1(a * np.log(x)) / a
    return _finish(out, scalar)
