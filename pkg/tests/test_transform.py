import numpy as np
import pytest

from yjgambles.transform import (
    isoelastic,
    yj_derivative,
    yj_forward,
    yj_inverse,
    yj_reexpress,
)

PARAMS = [-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0]
WEALTH_GRID = np.concatenate([
    -np.geomspace(1e-3, 100.0, 25)[::-1], [0.0], np.geomspace(1e-3, 100.0, 25)
])


def test_forward_trivial_values():
    assert yj_forward(0.0, 0.7) == 0.0
    assert yj_forward(3.0, 0.0) == pytest.approx(3.0, abs=1e-15)
    assert yj_forward(1.0, 0.5) == pytest.approx(2.0 * (np.sqrt(2.0) - 1.0), rel=1e-14)
    assert yj_forward(-3.0, 1.0) == pytest.approx((1.0 - (1.0 + 3.0) ** 2) / 2.0, rel=1e-14)


def test_forward_log_branches():
    x = np.linspace(0.0, 50.0, 11)
    assert np.allclose(yj_forward(x, 1.0), np.log1p(x), rtol=1e-14)
    xn = -np.linspace(0.1, 50.0, 11)
    assert np.allclose(yj_forward(xn, -1.0), -np.log1p(-xn), rtol=1e-14)


def test_inverse_trivial_values():
    for p in PARAMS:
        assert yj_inverse(0.0, p) == 0.0
    assert yj_inverse(0.8284271247461903, 0.5) == pytest.approx(1.0, rel=1e-12)
    assert yj_inverse(-7.5, 1.0) == pytest.approx(-3.0, rel=1e-12)


@pytest.mark.parametrize("p", PARAMS)
def test_roundtrip(p):
    y = yj_forward(WEALTH_GRID, p)
    back = yj_inverse(y, p)
    assert np.allclose(back, WEALTH_GRID, rtol=1e-12, atol=1e-12)
    # and the other direction over a transformed grid
    ygrid = np.linspace(-20.0, 20.0, 81)
    again = yj_forward(yj_inverse(ygrid, p), p)
    assert np.allclose(again, ygrid, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("p", PARAMS)
def test_monotone(p):
    vals = yj_forward(np.linspace(-100.0, 100.0, 501), p)
    assert np.all(np.diff(vals) > 0)


def test_derivative_values():
    for p in PARAMS:
        assert yj_derivative(0.0, p) == 1.0
    assert yj_derivative(1.0, 0.5) == pytest.approx(2.0 ** -0.5, rel=1e-14)
    assert yj_derivative(-1.0, 0.5) == pytest.approx(2.0 ** 0.5, rel=1e-14)


@pytest.mark.parametrize("p", PARAMS)
def test_derivative_matches_finite_differences(p):
    x = np.linspace(-30.0, 30.0, 121)
    h = 1e-6
    fd = (yj_forward(x + h, p) - yj_forward(x - h, p)) / (2.0 * h)
    assert np.allclose(yj_derivative(x, p), fd, atol=1e-6, rtol=1e-6)


@pytest.mark.parametrize("p", PARAMS)
def test_second_derivative_continuous_at_zero(p):
    # one-sided second differences from both sides converge to -p
    h = 1e-5
    right = (yj_forward(2 * h, p) - 2 * yj_forward(h, p) + yj_forward(0.0, p)) / h**2
    left = (yj_forward(0.0, p) - 2 * yj_forward(-h, p) + yj_forward(-2 * h, p)) / h**2
    assert right == pytest.approx(-p, abs=1e-4)
    assert left == pytest.approx(-p, abs=1e-4)


@pytest.mark.parametrize("p", PARAMS)
def test_antisymmetry_under_parameter_negation(p):
    # signed identity: Psi_{-p}(-x) = -Psi_p(x), exactly branch-for-branch
    vals = yj_forward(WEALTH_GRID, p)
    mirrored = yj_forward(-WEALTH_GRID, -p)
    assert np.array_equal(mirrored, -vals)


def test_identity_at_zero_parameter():
    assert np.array_equal(yj_forward(WEALTH_GRID, 0.0), WEALTH_GRID)


@pytest.mark.parametrize("p_in", PARAMS)
@pytest.mark.parametrize("p_out", [-1.0, 0.0, 0.5, 1.0])
def test_reexpress_matches_composition(p_in, p_out):
    y = np.linspace(-15.0, 15.0, 121)
    fused = yj_reexpress(y, p_in, p_out)
    composed = yj_forward(yj_inverse(y, p_in), p_out)
    assert np.allclose(fused, composed, rtol=1e-12, atol=1e-12)


def test_reexpress_identity():
    y = np.linspace(-40.0, 40.0, 41)
    for p in PARAMS:
        assert np.allclose(yj_reexpress(y, p, p), y, rtol=1e-13, atol=1e-13)


def test_isoelastic_values():
    for p in PARAMS:
        assert isoelastic(1.0, p) == pytest.approx(0.0, abs=1e-15)
    # bounded below at the origin by -1/(1-p)
    assert isoelastic(1e-14, 0.5) == pytest.approx(-2.0, abs=1e-6)
    assert isoelastic(np.e, 1.0) == pytest.approx(1.0, rel=1e-14)


def test_isoelastic_domain_error():
    with pytest.raises(ValueError):
        isoelastic(0.0, 0.5)
    with pytest.raises(ValueError):
        isoelastic(-1.0, 0.5)


@pytest.mark.parametrize("fn", [yj_forward, yj_inverse, yj_derivative])
def test_parameter_domain_errors(fn):
    for bad in (1.5, -1.0001, np.nan):
        with pytest.raises(ValueError):
            fn(1.0, bad)
    with pytest.raises(ValueError):
        yj_reexpress(1.0, 0.5, 2.0)


def test_scalar_in_scalar_out():
    assert isinstance(yj_forward(2.0, 0.5), float)
    assert isinstance(yj_inverse(2.0, 0.5), float)
    assert isinstance(yj_reexpress(2.0, 0.5, 0.25), float)
    assert isinstance(yj_forward(np.arange(3.0), 0.5), np.ndarray)
