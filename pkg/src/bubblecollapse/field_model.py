"""Velocity and pressure fields in the oil around the bubble.

The oil is incompressible and the flow purely radial, so the velocity
outside the wall is v(r, t) = R^2 Rdot / r^2 (divergence-free by
construction) and the pressure is taken linear in r between the wall and
the far field:

    p(r, t) = a R(t) r + (R0 - R(t)) / R0 * p_m

These closed forms make the momentum balance checkable term by term:
``ns_residual`` assembles rho (dv/dt + v dv/dr) + dp/dr - mu * lap(v)
and vanishes at the wall exactly when the radius equation holds.

All functions accept scalars or numpy arrays for ``r``.
"""

from dataclasses import dataclass

import numpy as np

from .quantities import BubbleGeometry, FluidProperties


@dataclass(frozen=True)
class RadialSample:
    """Wall kinematics at one instant: radius, speed, acceleration."""

    R: float       # cm
    Rdot: float    # cm/s
    Rddot: float   # cm/s^2


def _check_r(r):
    if np.any(np.asarray(r) <= 0):
        raise ValueError("r must be positive (field is defined outside the origin)")


def pressure(r, R, fluid: FluidProperties, geometry: BubbleGeometry, a):
    """Oil pressure at radius r, dyne/cm^2."""
    _check_r(r)
    return a * R * r + (geometry.R0 - R) / geometry.R0 * fluid.p_m


def velocity(r, R, Rdot):
    """Radial oil velocity at radius r, cm/s.

    Written as (R/r)^2 * Rdot so the wall value (r = R) is Rdot exactly,
    not merely to roundoff.
    """
    _check_r(r)
    return (R / r) ** 2 * Rdot


def velocity_time_derivative(r, sample: RadialSample):
    """dv/dt at fixed r, cm/s^2."""
    _check_r(r)
    return (sample.R ** 2 * sample.Rddot + 2.0 * sample.R * sample.Rdot ** 2) / (r * r)


def convective_term(r, R, Rdot):
    """v dv/dr, cm/s^2."""
    _check_r(r)
    return -2.0 * R ** 4 * Rdot ** 2 / r ** 5


def laplacian_term(r, R, Rdot):
    """Laplacian of the radial velocity, 1/(cm s)."""
    _check_r(r)
    return 2.0 * R * R * Rdot / r ** 4


def pressure_gradient(R, a):
    """dp/dr of the linear pressure profile, dyne/cm^3 (independent of r)."""
    return a * R


def ns_residual(r, sample: RadialSample, fluid: FluidProperties, a):
    """Momentum-balance defect at radius r, dyne/cm^3.

    Zero (to roundoff) at r = R whenever the wall kinematics satisfy the
    radius equation; elsewhere it measures how far the linear pressure
    profile is from an exact solution.
    """
    _check_r(r)
    inertia = velocity_time_derivative(r, sample) + convective_term(r, sample.R, sample.Rdot)
    return (fluid.rho * inertia + pressure_gradient(sample.R, a)
            - fluid.mu * laplacian_term(r, sample.R, sample.Rdot))
