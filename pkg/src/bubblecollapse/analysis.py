"""Pump-facing conclusions: rotation during collapse, safe speed, sweeps.

At rpm revolutions per minute the pignon turns rpm * 6 degrees per
second, so a bubble that needs t_c seconds to collapse rides through
rpm * 6 * t_c degrees of rotation.  Inverting that for a tolerable
angle gives the fastest speed at which a bubble still dies inside the
allowance.  Sweeps rerun both collapse-time estimates over a grid of
one parameter; points that cannot collapse (or fail validation) are
marked rather than aborting the sweep.
"""

import math
from dataclasses import dataclass

from .collapse_ode import OdeParams
from .integrator import integrate
from .linear_model import NoCollapseError, analytic_collapse_time, linearize
from .quantities import ValidationError, as_config, validate, with_parameter

__all__ = [
    "DEG_PER_S_PER_RPM", "PumpKinematics", "SweepPoint", "SweepResult",
    "rotation_angle", "max_safe_rpm", "pump_kinematics", "sweep",
]

DEG_PER_S_PER_RPM = 6.0   # 360 deg per revolution / 60 s per minute

SWEEPABLE = ("rho", "mu", "p_m", "R0")


def rotation_angle(rpm: float, t_c: float) -> float:
    """Degrees of pignon rotation while the bubble collapses."""
    return rpm * DEG_PER_S_PER_RPM * t_c


def max_safe_rpm(t_c: float, allowable_angle_deg: float) -> float:
    """Fastest speed keeping the collapse inside the allowable angle."""
    if not (t_c > 0.0):
        raise ValueError(f"t_c={t_c!r}: need a positive collapse time")
    if not (allowable_angle_deg > 0.0):
        raise ValueError(
            f"allowable_angle_deg={allowable_angle_deg!r}: need a positive angle")
    return allowable_angle_deg / (DEG_PER_S_PER_RPM * t_c)


@dataclass(frozen=True)
class PumpKinematics:
    rpm: float
    t_c: float                    # s
    angle_during_collapse: float  # deg
    allowable_angle_deg: float
    max_safe_rpm: float


def pump_kinematics(t_c: float, rpm: float,
                    allowable_angle_deg: float = 17.0) -> PumpKinematics:
    return PumpKinematics(
        rpm=rpm, t_c=t_c,
        angle_during_collapse=rotation_angle(rpm, t_c),
        allowable_angle_deg=allowable_angle_deg,
        max_safe_rpm=max_safe_rpm(t_c, allowable_angle_deg))


@dataclass(frozen=True)
class SweepPoint:
    value: float
    a: float | None               # effective coefficient, dyne/cm^4
    a_provenance: str | None      # "computed" | "overridden"
    t_c_numerical: float | None   # s; None on no collapse or failure
    t_c_analytic: float | None    # s; None when a <= 0
    collapsed: bool
    note: str = ""


@dataclass(frozen=True)
class SweepResult:
    parameter: str
    points: tuple
    monotonicity_numerical: str   # increasing|decreasing|constant|mixed|undetermined
    monotonicity_analytic: str


def _trend(values) -> str:
    xs = [v for v in values if v is not None]
    if len(xs) < 2:
        return "undetermined"
    ups = downs = False
    for prev, nxt in zip(xs, xs[1:]):
        tol = 1e-12 * max(abs(prev), abs(nxt))
        if nxt - prev > tol:
            ups = True
        elif prev - nxt > tol:
            downs = True
    if ups and downs:
        return "mixed"
    if ups:
        return "increasing"
    if downs:
        return "decreasing"
    return "constant"


def sweep(config, parameter: str, values) -> SweepResult:
    """Rerun both collapse-time estimates along one parameter axis.

    The coefficient a is re-resolved per point (recomputed from the gas
    inventory unless the config pins an override).  Grid must be
    strictly monotone.  No point aborts the sweep: validation failures
    and non-collapsing points come back marked, with a note.
    """
    if parameter not in SWEEPABLE:
        raise ValueError(
            f"parameter={parameter!r}: sweepable parameters are {SWEEPABLE}")
    grid = [float(v) for v in values]
    if not grid:
        raise ValueError("empty sweep grid")
    diffs = [b - a for a, b in zip(grid, grid[1:])]
    if not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)) and diffs:
        raise ValueError(f"sweep grid must be strictly monotone, got {grid}")

    base = as_config(config)
    points = []
    for v in grid:
        try:
            scenario = validate(with_parameter(base, parameter, v))
        except ValidationError as exc:
            points.append(SweepPoint(
                value=v, a=None, a_provenance=None, t_c_numerical=None,
                t_c_analytic=None, collapsed=False,
                note="invalid: " + "; ".join(exc.errors)))
            continue
        a = scenario.coefficient.a
        prov = scenario.coefficient.provenance
        params = OdeParams.from_scenario(scenario)
        try:
            t_ana = analytic_collapse_time(linearize(params, scenario.geometry))
        except NoCollapseError:
            t_ana = None
        result = integrate(scenario)
        if result.trajectory.termination == "collapsed":
            points.append(SweepPoint(
                value=v, a=a, a_provenance=prov, t_c_numerical=result.t_c,
                t_c_analytic=t_ana, collapsed=True))
        else:
            reason = result.trajectory.termination
            note = f"no collapse ({reason})"
            if a <= 0.0:
                note += f"; coefficient a={a:.6e} dyne/cm^4 is not positive"
            points.append(SweepPoint(
                value=v, a=a, a_provenance=prov, t_c_numerical=None,
                t_c_analytic=t_ana, collapsed=False, note=note))

    return SweepResult(
        parameter=parameter,
        points=tuple(points),
        monotonicity_numerical=_trend([p.t_c_numerical for p in points]),
        monotonicity_analytic=_trend([p.t_c_analytic for p in points]))
