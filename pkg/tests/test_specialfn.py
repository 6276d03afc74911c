import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wrmf.errors import DomainError
from wrmf.specialfn import (
    PSI_SERIES_SWITCH,
    f_value,
    log_u_value,
    omega_constant,
    psi_dy,
    psi_value,
    u_dx,
    u_dxx,
    u_value,
)

from oracles import OMEGA, central_difference, psi_mp, u_bisect, u_lambertw

couplings = st.floats(1e-3, 100.0)
shifts = st.floats(-10.0, 10.0)


def test_omega_oracle_frozen():
    assert u_bisect(1.0, 0.0) == pytest.approx(OMEGA, rel=1e-15)


@pytest.mark.parametrize(
    "a, x, expected",
    [(1.0, 1.0, 1.0), (0.0, 0.0, 1.0), (1.0, 0.0, OMEGA)],
)
def test_u_value_examples(a, x, expected):
    assert u_value(a, x) == pytest.approx(expected, rel=1e-15)


def test_u_value_free_case_is_exact():
    xs = np.linspace(-5, 5, 11)
    assert np.array_equal(u_value(0.0, xs), np.exp(xs))


@pytest.mark.parametrize(
    "fn, expected",
    [
        (u_dx, [0.5, 1.0, 0.36189625663488922148]),
        (f_value, [1.5, 1.0, 0.72796904633820209701]),
    ],
)
def test_derived_examples(fn, expected):
    got = [fn(1.0, 1.0), fn(0.0, 0.0), fn(1.0, 0.0)]
    assert got == pytest.approx(expected, rel=1e-14)


def test_omega_constant():
    assert omega_constant() == pytest.approx(OMEGA, rel=1e-15)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_is_domain_error(bad):
    with pytest.raises(DomainError):
        u_value(1.0, bad)
    with pytest.raises(DomainError):
        u_value(bad, 0.0)


def test_negative_coupling_rejected():
    with pytest.raises(DomainError):
        u_value(-1.0, 0.0)


@given(couplings, shifts)
def test_lambert_identity(a, x):
    u = u_value(a, x)
    assert u > 0
    assert abs(u * math.exp(a * u) - math.exp(x)) / math.exp(x) <= 1e-12


@given(couplings, shifts)
def test_agrees_with_bisection_and_lambertw(a, x):
    u = u_value(a, x)
    assert u == pytest.approx(u_bisect(a, x), rel=1e-13)
    assert u == pytest.approx(float(u_lambertw(a, x)), rel=1e-12)


def test_extreme_arguments_do_not_overflow():
    # a e^x overflows double precision here, u itself is moderate
    u = u_value(1e-3, 800.0)
    assert math.log(u) + 1e-3 * u == pytest.approx(800.0, rel=1e-15)
    t = log_u_value(100.0, -800.0)
    assert t + 100.0 * math.exp(t) == pytest.approx(-800.0, rel=1e-15)


@given(couplings, shifts)
def test_u_dx_matches_finite_difference(a, x):
    h = 1e-6 * max(1.0, abs(x))
    fd = central_difference(lambda s: u_value(a, s), x, h)
    assert u_dx(a, x) == pytest.approx(fd, rel=1e-6)


@given(couplings, shifts)
def test_u_dxx_matches_finite_difference(a, x):
    h = 1e-4 * max(1.0, abs(x))
    fd = central_difference(lambda s: u_dx(a, s), x, h)
    assert u_dxx(a, x) == pytest.approx(fd, rel=1e-5, abs=1e-12)


@given(couplings, shifts)
def test_f_derivative_is_u(a, x):
    h = 1e-6 * max(1.0, abs(x))
    fd = central_difference(lambda s: f_value(a, s), x, h)
    assert fd == pytest.approx(u_value(a, x), rel=1e-6)


@given(couplings, shifts, st.floats(1e-3, 1.0))
def test_u_monotone_in_x_and_a(a, x, dx):
    assert u_value(a, x + dx) > u_value(a, x)
    assert u_value(a * (1 + dx), x) < u_value(a, x)


def test_vectorized_matches_scalar():
    a = np.logspace(-3, 2, 7)[:, None]
    x = np.linspace(-10, 10, 9)[None, :]
    grid = u_value(a, x)
    assert grid.shape == (7, 9)
    assert grid[3, 4] == u_value(float(a[3, 0]), float(x[0, 4]))


# --- psi -----------------------------------------------------------------------


def test_psi_small_y_matches_leading_term():
    assert psi_value(0.1) == pytest.approx(0.1**2 / 24, rel=0.03)


def test_psi_tends_to_zero():
    assert psi_value(1e-300) == 0.0
    assert psi_value(1e-8) == pytest.approx(1e-16 / 24, rel=1e-12)


@pytest.mark.parametrize("y", [1e-4, 7e-4, 1e-3, 2e-3, 0.01, 0.1, 1.0, 5.0, 30.0, 200.0])
def test_psi_against_high_precision(y):
    assert psi_value(y) == pytest.approx(psi_mp(y), rel=1e-12, abs=1e-12)


def test_psi_one_frozen():
    assert psi_value(1.0) == pytest.approx(0.040651852256408315407, rel=1e-13)


def test_psi_series_and_direct_agree_near_switch():
    from wrmf.specialfn import _psi_direct, _psi_series

    ys = np.linspace(5e-4, 2e-3, 31)
    assert np.max(np.abs(_psi_series(ys) - _psi_direct(ys))) <= 1e-10
    below = psi_value(np.nextafter(PSI_SERIES_SWITCH, 0))
    above = psi_value(PSI_SERIES_SWITCH)
    assert abs(above - below) <= 1e-12


def test_psi_increasing_on_log_grid():
    ys = np.geomspace(1e-6, 50, 4000)
    assert np.all(np.diff(psi_value(ys)) > 0)


def test_psi_handles_huge_y():
    assert math.isfinite(psi_value(1e4))
    assert psi_value(1e4) == pytest.approx(math.log(1e4) - 1, rel=1e-14)


@pytest.mark.parametrize("y", [1e-4, 5e-3, 0.05, 0.7, 3.0, 40.0])
def test_psi_dy_finite_difference(y):
    h = 1e-6 * y
    assert psi_dy(y) == pytest.approx(central_difference(psi_mp, y, h), rel=1e-6)


@pytest.mark.parametrize("bad", [0.0, -1.0])
def test_psi_domain(bad):
    with pytest.raises(DomainError):
        psi_value(bad)
