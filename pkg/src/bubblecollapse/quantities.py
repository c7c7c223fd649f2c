"""Parameter containers and validation for bubble-collapse scenarios.

Everything is CGS: lengths in cm, densities in g/cm^3, pressures in
dyne/cm^2, dynamic viscosity in poise, the universal gas constant in
erg/(mol K).  A scenario bundles the oil, the trapped gas, the initial
bubble and the numerical settings; ``validate`` turns it into a frozen,
internally consistent object with the pressure coefficient resolved.
"""

import math
from dataclasses import dataclass, field, replace


@dataclass(frozen=True)
class FluidProperties:
    rho: float          # oil density, g/cm^3
    mu: float           # dynamic viscosity, poise
    p_m: float          # mean pressure in the vane, dyne/cm^2


@dataclass(frozen=True)
class GasSpec:
    rho_gas: float      # density of the trapped gas, g/cm^3
    W: float            # molar mass, g/mol
    T: float            # absolute temperature, K
    R_univ: float = 8.314e7   # universal gas constant, erg/(mol K)


@dataclass(frozen=True)
class BubbleGeometry:
    R0: float           # initial bubble radius, cm


@dataclass(frozen=True)
class IntegratorSettings:
    """Adaptive-integrator knobs; the defaults suit vane-scale collapses."""

    rel_tol: float = 1e-9
    abs_tol: tuple = (1e-12, 1e-9)    # (radius cm, velocity cm/s)
    max_step: float = math.inf        # s
    collapse_epsilon: float = 1e-3    # event fires at R = collapse_epsilon * R0
    max_time: float = 1.0             # s
    singularity_floor: float = 1e-12  # cm; acceleration refuses R at or below this
    growth_cap: float = 1e3           # stop once R >= growth_cap * R0 (no collapse possible)


@dataclass(frozen=True)
class ScenarioConfig:
    fluid: FluidProperties
    gas: GasSpec
    geometry: BubbleGeometry
    a_override: float | None = None   # pressure coefficient, dyne/cm^4; None = compute from gas
    integrator: IntegratorSettings = field(default_factory=IntegratorSettings)
    pump_rpm: float = 2000.0


@dataclass(frozen=True)
class ValidatedScenario:
    """A scenario that passed ``validate``; carries the resolved coefficient."""

    fluid: FluidProperties
    gas: GasSpec
    geometry: BubbleGeometry
    a_override: float | None
    integrator: IntegratorSettings
    pump_rpm: float
    inventory: "GasInventory"             # noqa: F821 - see gas_model
    coefficient: "PressureCoefficient"    # noqa: F821


class ValidationError(ValueError):
    """Raised with the full list of violations, not just the first one."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def _finite(x):
    return isinstance(x, (int, float)) and math.isfinite(x)


def _check(errors, ok, name, value, reason):
    if not ok:
        errors.append(f"{name}={value!r}: {reason}")


def as_config(scenario):
    """Strip a scenario back down to its plain ``ScenarioConfig``."""
    if isinstance(scenario, ValidatedScenario):
        return ScenarioConfig(
            fluid=scenario.fluid, gas=scenario.gas, geometry=scenario.geometry,
            a_override=scenario.a_override, integrator=scenario.integrator,
            pump_rpm=scenario.pump_rpm)
    return scenario


def validate(config):
    """Check a scenario and resolve its pressure coefficient.

    Collects every violation before raising, so a bad config is reported
    in one shot.  Accepts either a ``ScenarioConfig`` or an already
    validated scenario; revalidating is idempotent and returns an equal
    object.
    """
    from . import gas_model   # deferred: gas_model imports our types

    config = as_config(config)

    errors = []
    f, g, geom, s = config.fluid, config.gas, config.geometry, config.integrator

    _check(errors, _finite(f.rho) and f.rho > 0, "fluid.rho", f.rho,
           "oil density must be finite and positive")
    _check(errors, _finite(f.mu) and f.mu >= 0, "fluid.mu", f.mu,
           "viscosity must be finite and non-negative")
    _check(errors, _finite(f.p_m) and f.p_m > 0, "fluid.p_m", f.p_m,
           "mean vane pressure must be finite and positive")
    _check(errors, _finite(g.rho_gas) and g.rho_gas >= 0, "gas.rho_gas", g.rho_gas,
           "gas density must be finite and non-negative")
    _check(errors, _finite(g.W) and g.W > 0, "gas.W", g.W,
           "molar mass must be finite and positive")
    _check(errors, _finite(g.T) and g.T > 0, "gas.T", g.T,
           "temperature must be finite and positive")
    _check(errors, _finite(g.R_univ) and g.R_univ > 0, "gas.R_univ", g.R_univ,
           "gas constant must be finite and positive")
    _check(errors, _finite(geom.R0) and geom.R0 > 0, "geometry.R0", geom.R0,
           "initial radius must be finite and positive")
    if config.a_override is not None:
        _check(errors, _finite(config.a_override), "a_override", config.a_override,
               "override must be a finite number when given")
    _check(errors, _finite(config.pump_rpm) and config.pump_rpm >= 0,
           "pump_rpm", config.pump_rpm, "rpm must be finite and non-negative")

    _check(errors, _finite(s.rel_tol) and 0 < s.rel_tol <= 0.1, "integrator.rel_tol",
           s.rel_tol, "relative tolerance must lie in (0, 0.1]")
    ok_abs = (isinstance(s.abs_tol, (tuple, list)) and len(s.abs_tol) == 2
              and all(_finite(v) and v > 0 for v in s.abs_tol))
    _check(errors, ok_abs, "integrator.abs_tol", s.abs_tol,
           "needs two positive components (radius, velocity)")
    _check(errors, (isinstance(s.max_step, (int, float)) and s.max_step > 0
                    and not math.isnan(s.max_step)),
           "integrator.max_step", s.max_step, "must be positive (inf allowed)")
    _check(errors, _finite(s.collapse_epsilon) and 0 < s.collapse_epsilon < 1,
           "integrator.collapse_epsilon", s.collapse_epsilon, "must lie in (0, 1)")
    _check(errors, _finite(s.max_time) and s.max_time > 0, "integrator.max_time",
           s.max_time, "must be finite and positive")
    _check(errors, _finite(s.singularity_floor) and s.singularity_floor > 0,
           "integrator.singularity_floor", s.singularity_floor, "must be positive")
    _check(errors, _finite(s.growth_cap) and s.growth_cap > 1,
           "integrator.growth_cap", s.growth_cap, "must exceed 1")
    if not errors and s.collapse_epsilon * geom.R0 <= s.singularity_floor:
        errors.append(
            f"integrator.collapse_epsilon={s.collapse_epsilon!r}: event radius "
            f"{s.collapse_epsilon * geom.R0!r} cm does not clear the singularity floor")

    if errors:
        raise ValidationError(errors)

    inventory = gas_model.gas_inventory(g, geom)
    coefficient = gas_model.pressure_coefficient(f, g, geom, config.a_override)
    return ValidatedScenario(
        fluid=f, gas=g, geometry=geom, a_override=config.a_override,
        integrator=s, pump_rpm=config.pump_rpm,
        inventory=inventory, coefficient=coefficient)


def with_parameter(config, name, value):
    """Return a copy of ``config`` with one physical parameter replaced.

    ``name`` is one of ``rho``, ``mu``, ``p_m`` (oil) or ``R0`` (geometry).
    """
    config = as_config(config)
    if name == "rho":
        return replace(config, fluid=replace(config.fluid, rho=value))
    if name == "mu":
        return replace(config, fluid=replace(config.fluid, mu=value))
    if name == "p_m":
        return replace(config, fluid=replace(config.fluid, p_m=value))
    if name == "R0":
        return replace(config, geometry=replace(config.geometry, R0=value))
    raise ValueError(f"unknown sweep parameter {name!r}; "
                     "expected one of rho, mu, p_m, R0")
