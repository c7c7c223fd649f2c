"""Collapse of a spherical gas bubble in viscous oil in a gerotor vane.

CGS units throughout: cm, g, s, dyne/cm^2 for pressure, poise for
dynamic viscosity.  Typical use::

    from bubblecollapse import ScenarioConfig, FluidProperties, GasSpec, \
        BubbleGeometry, validate, integrate

    cfg = ScenarioConfig(
        fluid=FluidProperties(rho=8.2, mu=0.0287, p_m=1e7),
        gas=GasSpec(rho_gas=0.01177, W=28.97, T=300.0),
        geometry=BubbleGeometry(R0=0.05),
        a_override=1e7)
    result = integrate(validate(cfg))
    print(result.t_c)
"""

from .quantities import (BubbleGeometry, FluidProperties, GasSpec,
                         IntegratorSettings, ScenarioConfig, ValidatedScenario,
                         ValidationError, as_config, validate, with_parameter)
from .gas_model import (GasInventory, PressureCoefficient, gas_inventory,
                        pressure_coefficient)
from .collapse_ode import (BubbleState, OdeParams, SingularityError,
                           acceleration, initial_state, ode_residual,
                           ode_residual_partials)
from .field_model import (RadialSample, convective_term, laplacian_term,
                          ns_residual, pressure, pressure_gradient, velocity,
                          velocity_time_derivative)
from .integrator import (CollapseResult, EventQuality, IntegrationDiagnostics,
                         Trajectory, integrate, integrate_fixed_oracle,
                         sample_trajectory)
from .linear_model import (AnalyticSolution, LinearizedOde, NoCollapseError,
                           analytic_collapse_time, analytic_solution,
                           closed_form_derivatives, closed_form_radius,
                           cubic_coefficient, linearize, taylor2_radius)
from .analysis import (DEG_PER_S_PER_RPM, PumpKinematics, SweepPoint,
                       SweepResult, max_safe_rpm, pump_kinematics,
                       rotation_angle, sweep)

__version__ = "0.1.0"

__all__ = [
    "BubbleGeometry", "FluidProperties", "GasSpec", "IntegratorSettings",
    "ScenarioConfig", "ValidatedScenario", "ValidationError", "as_config",
    "validate", "with_parameter",
    "GasInventory", "PressureCoefficient", "gas_inventory",
    "pressure_coefficient",
    "BubbleState", "OdeParams", "SingularityError", "acceleration",
    "initial_state", "ode_residual", "ode_residual_partials",
    "RadialSample", "convective_term", "laplacian_term", "ns_residual",
    "pressure", "pressure_gradient", "velocity", "velocity_time_derivative",
    "CollapseResult", "EventQuality", "IntegrationDiagnostics", "Trajectory",
    "integrate", "integrate_fixed_oracle", "sample_trajectory",
    "AnalyticSolution", "LinearizedOde", "NoCollapseError",
    "analytic_collapse_time", "analytic_solution", "closed_form_derivatives",
    "closed_form_radius", "cubic_coefficient", "linearize", "taylor2_radius",
    "DEG_PER_S_PER_RPM", "PumpKinematics", "SweepPoint", "SweepResult",
    "max_safe_rpm", "pump_kinematics", "rotation_angle", "sweep",
    "__version__",
]
