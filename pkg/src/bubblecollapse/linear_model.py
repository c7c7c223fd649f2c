"""Linearized collapse model and its closed-form solutions.

Writing the radius equation as a residual
F(t, R, Rdot, Rddot) = rho Rddot R^2 - 2 mu Rdot + a R^3 and expanding
around the rest start (0, R0, 0, -a R0 / rho) gives the constant
coefficient equation

    rho R0^2 * Rddot - 2 mu * Rdot + a R0^2 * R = 0

whose characteristic roots are lambda = (mu +/- sqrt(mu^2 - a rho R0^4))
/ (rho R0^2).  For the oscillatory regime (negative discriminant) the
solution through the rest start is

    R(t) = exp(alpha t) (R0 cos(beta t) - (alpha R0 / beta) sin(beta t))

and its small-time expansion is R0 - (a R0 / (2 rho)) t^2 + a3 t^3 + ...
with a3 = -a mu / (3 rho^2 R0).  The quadratic truncation hits zero at
t_c = sqrt(2 rho / a), the closed-form collapse estimate.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .collapse_ode import OdeParams
from .quantities import BubbleGeometry


class NoCollapseError(ValueError):
    """The quadratic collapse estimate needs a > 0; the scenario has none."""


@dataclass(frozen=True)
class LinearizedOde:
    """Constant-coefficient model c2 Rddot + c1 Rdot + c0 R = 0 near t = 0."""

    rho: float
    mu: float
    a: float
    R0: float
    c2: float                 # rho R0^2
    c1: float                 # -2 mu
    c0: float                 # a R0^2
    roots: tuple              # characteristic roots, complex pair
    discriminant: float       # mu^2 - a rho R0^4
    discriminant_r0_cubed: float   # variant with R0^3; dimensionally off, kept as a diagnostic


def linearize(params: OdeParams, geometry: BubbleGeometry) -> LinearizedOde:
    """Constant-coefficient equation tangent to the collapse at its start."""
    rho, mu, a, R0 = params.rho, params.mu, params.a, geometry.R0
    c2 = rho * R0 ** 2
    c1 = -2.0 * mu
    c0 = a * R0 ** 2
    disc = mu * mu - a * rho * R0 ** 4
    sq = cmath.sqrt(complex(disc, 0.0))
    roots = ((mu + sq) / c2, (mu - sq) / c2)
    return LinearizedOde(rho=rho, mu=mu, a=a, R0=R0, c2=c2, c1=c1, c0=c0,
                         roots=roots, discriminant=disc,
                         discriminant_r0_cubed=mu * mu - a * rho * R0 ** 3)


def closed_form_radius(linear: LinearizedOde, t):
    """Exact solution of the linearized equation through the rest start.

    Real-valued in every root regime; accepts scalar or array t.
    """
    return _closed_form(linear, np.asarray(t, dtype=float), order=0)


def closed_form_derivatives(linear: LinearizedOde, t):
    """(R, Rdot, Rddot) of the closed form, for residual checks."""
    t = np.asarray(t, dtype=float)
    return (_closed_form(linear, t, 0), _closed_form(linear, t, 1),
            _closed_form(linear, t, 2))


def _closed_form(linear, t, order):
    rho, mu, R0 = linear.rho, linear.mu, linear.R0
    disc = linear.discriminant
    denom = rho * R0 ** 2
    if disc < 0.0:
        alpha = mu / denom
        beta = math.sqrt(-disc) / denom
        A, B = R0, -mu * R0 / (math.sqrt(-disc))   # B = -alpha R0 / beta
        e = np.exp(alpha * t)
        c, s = np.cos(beta * t), np.sin(beta * t)
        if order == 0:
            return e * (A * c + B * s)
        # with u = A cos + B sin: u' = beta (-A sin + B cos)
        if order == 1:
            return e * (alpha * (A * c + B * s) + beta * (-A * s + B * c))
        return e * ((alpha * alpha - beta * beta) * (A * c + B * s)
                    + 2.0 * alpha * beta * (-A * s + B * c))
    if disc == 0.0:
        lam = mu / denom
        e = np.exp(lam * t)
        # R = e^{lam t} (R0 + B t) with B = -lam R0 so Rdot(0) = 0
        B = -lam * R0
        if order == 0:
            return e * (R0 + B * t)
        if order == 1:
            return e * (lam * (R0 + B * t) + B)
        return e * (lam * lam * (R0 + B * t) + 2.0 * lam * B)
    sq = math.sqrt(disc)
    lam1 = (mu + sq) / denom
    lam2 = (mu - sq) / denom
    C1 = -R0 * lam2 / (lam1 - lam2)
    C2 = R0 * lam1 / (lam1 - lam2)
    e1, e2 = np.exp(lam1 * t), np.exp(lam2 * t)
    if order == 0:
        return C1 * e1 + C2 * e2
    if order == 1:
        return C1 * lam1 * e1 + C2 * lam2 * e2
    return C1 * lam1 * lam1 * e1 + C2 * lam2 * lam2 * e2


def taylor2_radius(linear: LinearizedOde, t):
    """Second-order small-time radius: R0 (1 - a t^2 / (2 rho)).

    Viscosity first appears at cubic order, so this model is
    mu-independent by construction.
    """
    t = np.asarray(t, dtype=float)
    return linear.R0 * (1.0 - linear.a / (2.0 * linear.rho) * t * t)


def analytic_collapse_time(linear: LinearizedOde) -> float:
    """Root of the quadratic model, sqrt(2 rho / a); needs a > 0."""
    if linear.a <= 0.0:
        raise NoCollapseError(
            f"a={linear.a!r} dyne/cm^4: the gas pressure wins, no collapse to time")
    return math.sqrt(2.0 * linear.rho / linear.a)


def cubic_coefficient(linear: LinearizedOde) -> float:
    """Cubic Taylor coefficient a3 = -a mu / (3 rho^2 R0), cm/s^3.

    Equals R'''(0)/6 of the closed form; it bounds how quickly the
    quadratic truncation degrades.
    """
    return -linear.a * linear.mu / (3.0 * linear.rho ** 2 * linear.R0)


@dataclass(frozen=True)
class AnalyticSolution:
    """Bundle of the linearized model's evaluable pieces."""

    linear: LinearizedOde
    taylor2_coefficients: tuple    # (R0, 0, -a R0 / (2 rho))
    a3: float                      # cubic Taylor coefficient
    t_c: float | None              # sqrt(2 rho / a) when a > 0, else None

    def closed_form(self, t):
        return closed_form_radius(self.linear, t)

    def taylor2(self, t):
        return taylor2_radius(self.linear, t)


def analytic_solution(params: OdeParams, geometry: BubbleGeometry) -> AnalyticSolution:
    linear = linearize(params, geometry)
    t_c = None
    if linear.a > 0.0:
        t_c = analytic_collapse_time(linear)
    coeffs = (linear.R0, 0.0, -linear.a * linear.R0 / (2.0 * linear.rho))
    return AnalyticSolution(linear=linear, taylor2_coefficients=coeffs,
                            a3=cubic_coefficient(linear), t_c=t_c)
