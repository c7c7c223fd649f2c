"""The nonlinear radius equation for a collapsing bubble.

With R(t) the bubble radius, rho the oil density, mu its viscosity and a
the pressure coefficient, momentum balance at the bubble wall gives

    rho * Rddot * R^2 - 2 mu * Rdot + a * R^3 = 0

started from R(0) = R0, Rdot(0) = 0.  ``acceleration`` solves this for
Rddot; ``ode_residual`` evaluates the left-hand side as written, which
is what the linearization and the field checks work from.
"""

from dataclasses import dataclass

from .quantities import BubbleGeometry


@dataclass(frozen=True)
class BubbleState:
    t: float      # s
    R: float      # cm
    Rdot: float   # cm/s


@dataclass(frozen=True)
class OdeParams:
    rho: float    # g/cm^3
    mu: float     # poise
    a: float      # dyne/cm^4

    @classmethod
    def from_scenario(cls, scenario):
        return cls(rho=scenario.fluid.rho, mu=scenario.fluid.mu,
                   a=scenario.coefficient.a)


class SingularityError(ArithmeticError):
    """Radius at or below the floor: the wall acceleration is no longer trustworthy."""

    def __init__(self, R, floor):
        self.R = R
        self.floor = floor
        super().__init__(f"R={R!r} cm is at or below the floor {floor!r} cm")


def radial_acceleration(R, Rdot, rho, mu, a):
    # raw float core shared with the integrators; no floor check here
    return (2.0 * mu * Rdot - a * R ** 3) / (rho * R * R)


def acceleration(state: BubbleState, params: OdeParams, floor: float = 1e-12) -> float:
    """Rddot from the radius equation; refuses radii at or below ``floor``."""
    if state.R <= floor:
        raise SingularityError(state.R, floor)
    return radial_acceleration(state.R, state.Rdot, params.rho, params.mu, params.a)


def ode_residual(t, R, Rdot, Rddot, params: OdeParams) -> float:
    """Left-hand side of the radius equation (zero on a solution).

    The equation is autonomous; ``t`` is accepted so the signature lines
    up with the partials below but never enters the value.
    """
    return params.rho * Rddot * R * R - 2.0 * params.mu * Rdot + params.a * R ** 3


def ode_residual_partials(geometry: BubbleGeometry, params: OdeParams):
    """Gradient of the residual at the start of collapse.

    Evaluated at (t, R, Rdot, Rddot) = (0, R0, 0, -a R0 / rho), the
    point every trajectory starts from; returns the four partials in
    that argument order.  The Rdot and Rddot entries are nonzero, which
    is what lets the implicit function theorem trade the nonlinear
    equation for a linear one near t = 0.
    """
    R0 = geometry.R0
    d_t = 0.0
    d_R = params.a * R0 ** 2          # 2 rho Rddot R + 3 a R^2 at the start point
    d_Rdot = -2.0 * params.mu
    d_Rddot = params.rho * R0 ** 2
    return (d_t, d_R, d_Rdot, d_Rddot)


def initial_state(geometry: BubbleGeometry) -> BubbleState:
    """Rest start: full radius, zero wall speed."""
    return BubbleState(t=0.0, R=geometry.R0, Rdot=0.0)
