"""Velocity/pressure fields and the momentum-balance residual."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bubblecollapse import (BubbleGeometry, BubbleState, FluidProperties,
                            OdeParams, RadialSample, acceleration,
                            convective_term, laplacian_term, ns_residual,
                            pressure, pressure_gradient, validate, velocity,
                            velocity_time_derivative)
from bubblecollapse.gas_model import gas_inventory, pressure_coefficient
from conftest import make_reference_config

OIL = FluidProperties(rho=8.2, mu=0.0287, p_m=1e7)
GEOM = BubbleGeometry(R0=0.05)


def test_wall_velocity_is_exactly_the_radius_rate():
    for R, Rdot in [(0.05, 0.0), (0.037, -113.3), (1e-3, -5.5e4), (0.08, 42.0)]:
        assert velocity(R, R, Rdot) == Rdot


def test_velocity_decays_with_inverse_square():
    assert math.isclose(velocity(0.1, 0.05, -10.0), -2.5, rel_tol=1e-12)
    assert velocity(1.0, 0.05, 0.0) == 0.0


def test_fields_reject_nonpositive_radius():
    with pytest.raises(ValueError):
        velocity(0.0, 0.05, -1.0)
    with pytest.raises(ValueError):
        pressure(np.array([0.1, -0.1]), 0.05, OIL, GEOM, 1e7)


def test_pressure_far_field_after_collapse():
    # R = 0: the oil sits at the mean vane pressure everywhere
    for r in (0.01, 0.05, 1.0):
        assert pressure(r, 0.0, OIL, GEOM, 1e7) == OIL.p_m


def test_pressure_at_wall_initially_balances_gas():
    # with the computed coefficient, p(r=R0, R=R0) = p_m - p_g0
    gas = make_reference_config().gas
    a = pressure_coefficient(OIL, gas, GEOM).a
    p_g0 = gas_inventory(gas, GEOM).p_g0
    got = pressure(GEOM.R0, GEOM.R0, OIL, GEOM, a)
    want = OIL.p_m - p_g0
    assert abs(got - want) <= 1e-13 * abs(want)


def test_pressure_arithmetic_example():
    assert pressure(0.05, 0.05, OIL, GEOM, 1e7) == pytest.approx(2.5e4, rel=1e-12)


@settings(max_examples=50, derandomize=True)
@given(R=st.floats(0.005, 0.1), Rdot=st.floats(-1e3, 1e3))
def test_velocity_field_is_divergence_free(R, Rdot):
    """Central finite differences of v + 2v/r over r in [R, 10R]."""
    r = np.geomspace(R, 10.0 * R, 25)
    h = 1e-6 * r
    dv_dr = (velocity(r + h, R, Rdot) - velocity(r - h, R, Rdot)) / (2.0 * h)
    residual = dv_dr + 2.0 * velocity(r, R, Rdot) / r
    scale = np.abs(velocity(r, R, Rdot)) / r + 1e-300
    assert np.all(np.abs(residual) <= 1e-8 * scale + 1e-300)


def test_differential_terms_at_a_spot_check_point():
    s = RadialSample(R=0.04, Rdot=-50.0, Rddot=-3e4)
    r = 0.1
    assert math.isclose(velocity_time_derivative(r, s),
                        (0.04 ** 2 * -3e4 + 2 * 0.04 * 50.0 ** 2) / 0.01,
                        rel_tol=1e-12)
    assert math.isclose(convective_term(r, s.R, s.Rdot),
                        -2.0 * 0.04 ** 4 * 2500.0 / 1e-5, rel_tol=1e-12)
    assert math.isclose(laplacian_term(r, s.R, s.Rdot),
                        2.0 * 0.04 ** 2 * -50.0 / 1e-4, rel_tol=1e-12)
    assert pressure_gradient(s.R, 1e7) == pytest.approx(4e5, rel=1e-12)


def test_pressure_gradient_ignores_r():
    # linear-in-r profile: the slope is a*R wherever you stand
    s = RadialSample(R=0.04, Rdot=-50.0, Rddot=-3e4)
    assert pressure_gradient(s.R, 1e7) == 1e7 * 0.04


def test_static_fluid_has_zero_residual():
    s = RadialSample(R=0.05, Rdot=0.0, Rddot=0.0)
    assert ns_residual(0.07, s, OIL, 0.0) == 0.0


@settings(max_examples=100, derandomize=True)
@given(R=st.floats(1e-3, 0.5), Rdot=st.floats(-1e4, 1e4))
def test_wall_residual_vanishes_on_the_radius_equation(R, Rdot):
    params = OdeParams(rho=8.2, mu=0.0287, a=1e7)
    acc = acceleration(BubbleState(t=0.0, R=R, Rdot=Rdot), params)
    s = RadialSample(R=R, Rdot=Rdot, Rddot=acc)
    res = ns_residual(R, s, OIL, params.a)
    assert abs(res) <= 1e-9 * max(abs(params.rho * acc), abs(params.a * R), 1e-300)


def test_wall_residual_accepts_arrays():
    s = RadialSample(R=0.04, Rdot=-50.0, Rddot=-3e4)
    r = np.array([0.04, 0.08, 0.4])
    out = ns_residual(r, s, OIL, 1e7)
    assert out.shape == (3,)
    assert np.all(np.isfinite(out))
