"""Command-line front end: config in, report/trajectory/comparison out.

Subcommands:
  run    integrate a scenario, write report.txt, report.json and (on
         collapse) trajectory.csv + comparison.csv into --out
  sweep  rerun the estimates over a one-parameter grid, write sweep.csv
         and sweep.json
  check  validate a config and print the effective coefficient a
         without integrating

Config files are INI-style CGS key-value sections: [fluid] rho, mu,
p_m; [gas] rho_gas, W, T, optional R_univ and a_override; [geometry]
R0; optional [integrator] rel_tol, abs_tol (two comma-separated
numbers), max_step, collapse_epsilon, max_time, singularity_floor,
growth_cap; optional [pump] rpm.

Exit codes: 0 collapse; 2 no collapse within the horizon; 3 invalid
config; 4 integration failure; 5 unreadable config / I/O error.
Machine outputs are deterministic: same config, byte-identical files.
"""

import argparse
import configparser
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import gas_model
from .analysis import max_safe_rpm, rotation_angle, sweep
from .collapse_ode import OdeParams
from .integrator import CollapseResult, integrate
from .linear_model import (NoCollapseError, analytic_collapse_time,
                           analytic_solution, closed_form_radius, linearize,
                           taylor2_radius)
from .quantities import (BubbleGeometry, FluidProperties, GasSpec,
                         IntegratorSettings, ScenarioConfig, ValidationError,
                         validate)

__all__ = ["main", "load_config", "build_report", "emit_trajectory",
           "emit_comparison", "emit_sweep"]

EXIT_COLLAPSE = 0
EXIT_NO_COLLAPSE = 2
EXIT_INVALID = 3
EXIT_INTEGRATION = 4
EXIT_IO = 5

_SCHEMA = {
    "fluid": {"rho", "mu", "p_m"},
    "gas": {"rho_gas", "W", "T", "R_univ", "a_override"},
    "geometry": {"R0"},
    "integrator": {"rel_tol", "abs_tol", "max_step", "collapse_epsilon",
                   "max_time", "singularity_floor", "growth_cap"},
    "pump": {"rpm"},
}
_REQUIRED = {"fluid": {"rho", "mu", "p_m"},
             "gas": {"rho_gas", "W", "T"},
             "geometry": {"R0"}}


def load_config(path) -> ScenarioConfig:
    """Parse an INI scenario file; unknown keys are errors, not typos."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")   # may raise OSError -> exit 5
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    cp.optionxform = str   # field names are case-sensitive (W vs w, T vs t)
    try:
        cp.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise ValidationError([f"config parse error: {exc}"])

    errors = []
    if cp.defaults():
        errors.append("unknown section [DEFAULT]")
    for section in cp.sections():
        if section not in _SCHEMA:
            errors.append(f"unknown section [{section}]")
            continue
        for key in cp[section]:
            if key not in _SCHEMA[section]:
                errors.append(f"unknown key {key!r} in [{section}]")
    for section, keys in _REQUIRED.items():
        if not cp.has_section(section):
            errors.append(f"missing section [{section}]")
            continue
        for key in keys:
            if not cp.has_option(section, key):
                errors.append(f"missing key {key!r} in [{section}]")
    if errors:
        raise ValidationError(errors)

    def num(section, key, default=None):
        if not cp.has_option(section, key):
            return default
        raw = cp.get(section, key)
        try:
            return float(raw)
        except ValueError:
            errors.append(f"[{section}] {key} = {raw!r}: not a number")
            return default

    fluid = FluidProperties(rho=num("fluid", "rho"), mu=num("fluid", "mu"),
                            p_m=num("fluid", "p_m"))
    gas_kwargs = dict(rho_gas=num("gas", "rho_gas"), W=num("gas", "W"),
                      T=num("gas", "T"))
    r_univ = num("gas", "R_univ")
    if r_univ is not None:
        gas_kwargs["R_univ"] = r_univ
    gas = GasSpec(**gas_kwargs)
    geometry = BubbleGeometry(R0=num("geometry", "R0"))
    a_override = num("gas", "a_override")

    integ_kwargs = {}
    if cp.has_section("integrator"):
        for key in ("rel_tol", "max_step", "collapse_epsilon", "max_time",
                    "singularity_floor", "growth_cap"):
            val = num("integrator", key)
            if val is not None:
                integ_kwargs[key] = val
        if cp.has_option("integrator", "abs_tol"):
            raw = cp.get("integrator", "abs_tol")
            parts = [p for chunk in raw.split(",") for p in chunk.split()]
            try:
                pair = tuple(float(p) for p in parts)
                if len(pair) != 2:
                    raise ValueError
                integ_kwargs["abs_tol"] = pair
            except ValueError:
                errors.append(f"[integrator] abs_tol = {raw!r}: "
                              "need two numbers (cm, cm/s)")
    pump_rpm = num("pump", "rpm", default=2000.0)
    if errors:
        raise ValidationError(errors)
    return ScenarioConfig(fluid=fluid, gas=gas, geometry=geometry,
                          a_override=a_override,
                          integrator=IntegratorSettings(**integ_kwargs),
                          pump_rpm=pump_rpm)


def _or_nan(x):
    return float("nan") if x is None else x


def build_report(scenario, result: CollapseResult,
                 allowable_angle_deg: float) -> dict:
    """Aggregate everything an engineer (or a test) asks about one run."""
    fluid, gas, geom = scenario.fluid, scenario.gas, scenario.geometry
    inv = scenario.inventory
    coeff = scenario.coefficient
    a_computed = gas_model.pressure_coefficient(fluid, gas, geom).a
    params = OdeParams.from_scenario(scenario)
    linear = linearize(params, geom)
    sol = analytic_solution(params, geom)

    collapsed = result.trajectory.termination == "collapsed"
    t_num = result.t_c if collapsed else None
    t_ana = sol.t_c
    diff = abs(t_num - t_ana) if (t_num is not None and t_ana is not None) else None

    notes = list(result.diagnostics.notes)
    if coeff.provenance == "overridden":
        notes.append(
            f"pressure coefficient a = {coeff.a:.6e} dyne/cm^4 taken from "
            f"a_override; computed from the gas inventory it would be "
            f"{a_computed:.6e} dyne/cm^4")
    if a_computed <= 0.0:
        notes.append(
            f"computed pressure coefficient is {a_computed:.6e} dyne/cm^4 "
            f"(initial gas pressure p_g0 = {inv.p_g0:.6e} dyne/cm^2 vs mean "
            f"vane pressure p_m = {fluid.p_m:.6e} dyne/cm^2); a non-positive "
            "coefficient cannot drive a collapse")
    notes.append(
        "quadratic short-time solution uses R(t) = R0 - (a*R0/(2*rho))*t^2; "
        "the curvature sign follows from Rddot(0) = -a*R0/rho")
    notes.append(
        "exponential closed form is built from the characteristic roots "
        "(mu +/- sqrt(mu^2 - a*rho*R0^4))/(rho*R0^2); the R0^3 variant of "
        "the discriminant is carried as a diagnostic only")

    cubic_bound = (abs(sol.a3) * t_ana ** 3) if t_ana is not None else None
    report = {
        "a": {
            "value": coeff.a,
            "provenance": coeff.provenance,
            "computed_value": a_computed,
        },
        "gas_inventory": {
            "V0_cm3": inv.V0, "M_g": inv.M, "n0_mol": inv.n0,
            "p_g0_dyne_cm2": inv.p_g0,
        },
        "t_c": {
            "numerical_s": t_num,
            "analytic_s": t_ana,
            "abs_difference_s": diff,
        },
        "pump": {
            "rpm": scenario.pump_rpm,
            "rotation_angle_deg": (rotation_angle(scenario.pump_rpm, t_num)
                                   if t_num is not None else None),
            "allowable_angle_deg": allowable_angle_deg,
            "max_safe_rpm": (max_safe_rpm(t_num, allowable_angle_deg)
                             if t_num is not None else None),
        },
        "termination": result.trajectory.termination,
        "event": None,
        "diagnostics": {
            "accepted_steps": result.diagnostics.accepted_steps,
            "rejected_steps": result.diagnostics.rejected_steps,
            "rhs_evaluations": result.diagnostics.rhs_evaluations,
            "first_step_s": result.diagnostics.first_step,
            "final_step_s": result.diagnostics.final_step,
        },
        "linear_model": {
            "discriminant": linear.discriminant,
            "discriminant_r0_cubed": linear.discriminant_r0_cubed,
            "roots_real": [linear.roots[0].real, linear.roots[1].real],
            "roots_imag": [linear.roots[0].imag, linear.roots[1].imag],
            "taylor2_coefficients": list(sol.taylor2_coefficients),
            "cubic_coefficient_cm_s3": sol.a3,
            "cubic_term_at_t_c_analytic_cm": cubic_bound,
        },
        "notes": notes,
    }
    if result.event_quality is not None:
        ev = result.event_quality
        report["event"] = {
            "t_event_s": ev.t_event,
            "extrapolation_dt_s": ev.extrapolation_dt,
            "sample_spacing_s": ev.sample_spacing,
            "used_linear_fallback": ev.used_linear_fallback,
        }
    return report


def _fmt(x):
    if x is None:
        return "n/a"
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return f"{x:.9e}"
    return str(x)


def render_report(report: dict) -> str:
    """Human-readable flavor of the same report dict."""
    lines = ["bubble collapse report", "======================", ""]
    lines.append(f"termination           : {report['termination']}")
    lines.append(f"t_c numerical    [s]  : {_fmt(report['t_c']['numerical_s'])}")
    lines.append(f"t_c analytic     [s]  : {_fmt(report['t_c']['analytic_s'])}")
    lines.append(f"|difference|     [s]  : {_fmt(report['t_c']['abs_difference_s'])}")
    lines.append("")
    a = report["a"]
    lines.append(f"a ({a['provenance']})  [dyne/cm^4] : {_fmt(a['value'])}")
    lines.append(f"a (computed)  [dyne/cm^4] : {_fmt(a['computed_value'])}")
    inv = report["gas_inventory"]
    lines.append(f"V0 [cm^3] : {_fmt(inv['V0_cm3'])}   M [g] : {_fmt(inv['M_g'])}")
    lines.append(f"n0 [mol]  : {_fmt(inv['n0_mol'])}   p_g0 [dyne/cm^2] : "
                 f"{_fmt(inv['p_g0_dyne_cm2'])}")
    lines.append("")
    p = report["pump"]
    lines.append(f"pump speed        [rpm] : {_fmt(p['rpm'])}")
    lines.append(f"rotation angle    [deg] : {_fmt(p['rotation_angle_deg'])}")
    lines.append(f"allowable angle   [deg] : {_fmt(p['allowable_angle_deg'])}")
    lines.append(f"max safe speed    [rpm] : {_fmt(p['max_safe_rpm'])}")
    lines.append("")
    d = report["diagnostics"]
    lines.append(f"steps accepted/rejected : {d['accepted_steps']}/{d['rejected_steps']}"
                 f"   rhs evaluations : {d['rhs_evaluations']}")
    if report["event"] is not None:
        ev = report["event"]
        lines.append(f"event at t = {_fmt(ev['t_event_s'])} s, extrapolated "
                     f"{_fmt(ev['extrapolation_dt_s'])} s to R = 0"
                     + (" (linear fallback)" if ev["used_linear_fallback"] else ""))
    lm = report["linear_model"]
    lines.append(f"cubic coefficient a3 [cm/s^3] : {_fmt(lm['cubic_coefficient_cm_s3'])}")
    lines.append(f"|a3 * t_c^3|         [cm]     : {_fmt(lm['cubic_term_at_t_c_analytic_cm'])}")
    lines.append("")
    lines.append("notes:")
    for note in report["notes"]:
        lines.append(f"  - {note}")
    lines.append("")
    return "\n".join(lines)


def _tail_radius(ev, tau):
    c0, c1, c2 = ev.tail_coefficients
    return c0 + c1 * tau + c2 * tau * tau


def _tail_rate(ev, tau):
    _, c1, c2 = ev.tail_coefficients
    return c1 + 2.0 * c2 * tau


def emit_trajectory(result: CollapseResult, scenario, path, samples=500):
    """CSV of numerical and analytic radii on a uniform [0, t_c] grid.

    Past the event time the numerical columns follow the same quadratic
    tail that produced t_c.  Analytic radii are floored at zero once
    their formulas cross it (they are collapse profiles, not rebounds).
    """
    if result.t_c is None:
        raise ValueError("trajectory table needs a collapsed result")
    params = OdeParams.from_scenario(scenario)
    sol = analytic_solution(params, scenario.geometry)
    traj = result.trajectory
    ev = result.event_quality
    t_end = traj.coverage[1]
    times = np.linspace(0.0, result.t_c, int(samples))
    rows = []
    for t in times:
        if t <= t_end:
            R, V = traj.sample(float(t))
        else:
            R, V = _tail_radius(ev, t - ev.t_event), _tail_rate(ev, t - ev.t_event)
        rows.append((
            float(t), max(float(R), 0.0), float(V),
            max(float(sol.closed_form(float(t))), 0.0),
            max(float(sol.taylor2(float(t))), 0.0),
        ))
    header = "t_s,R_numerical_cm,Rdot_cm_s,R_closed_form_cm,R_taylor2_cm"
    _write_csv(path, header, rows)


def emit_comparison(report: dict, path):
    """CSV pitting the numerical and analytic headline numbers."""
    t_num = report["t_c"]["numerical_s"]
    t_ana = report["t_c"]["analytic_s"]
    rpm = report["pump"]["rpm"]
    allow = report["pump"]["allowable_angle_deg"]
    rows = []
    for name, num, ana in (
        ("t_c_s", t_num, t_ana),
        ("rotation_angle_deg",
         rotation_angle(rpm, t_num) if t_num is not None else None,
         rotation_angle(rpm, t_ana) if t_ana is not None else None),
        ("max_safe_rpm",
         max_safe_rpm(t_num, allow) if t_num is not None else None,
         max_safe_rpm(t_ana, allow) if t_ana is not None else None),
    ):
        d = abs(num - ana) if (num is not None and ana is not None) else None
        rows.append((name, _or_nan(num), _or_nan(ana), _or_nan(d)))
    lines = [f"{name},{num:.9e},{ana:.9e},{d:.9e}" for name, num, ana, d in rows]
    _write_lines(path, ["quantity,numerical,analytic,abs_difference"] + lines)


def emit_sweep(result, path):
    """CSV of one sweep: value, effective a, both t_c estimates, flag."""
    rows = []
    for p in result.points:
        rows.append(f"{p.value:.9e},{_or_nan(p.a):.9e},"
                    f"{_or_nan(p.t_c_numerical):.9e},"
                    f"{_or_nan(p.t_c_analytic):.9e},"
                    f"{str(p.collapsed).lower()}")
    header = f"{result.parameter},a,t_c_numerical_s,t_c_analytic_s,collapsed"
    _write_lines(path, [header] + rows)


def _write_csv(path, header, rows):
    lines = [header] + [",".join(f"{v:.9e}" for v in row) for row in rows]
    _write_lines(path, lines)


def _write_lines(path, lines):
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8",
                          newline="\n")


def _write_json(path, payload):
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n",
                          encoding="utf-8", newline="\n")


def _cmd_run(args) -> int:
    try:
        config = load_config(args.config)
        scenario = validate(config)
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValidationError as exc:
        for err in exc.errors:
            print(f"invalid config: {err}", file=sys.stderr)
        return EXIT_INVALID

    result = integrate(scenario)
    report = build_report(scenario, result, args.allowable_angle_deg)
    try:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        _write_json(out / "report.json", report)
        _write_lines(out / "report.txt", [render_report(report)])
        if result.trajectory.termination == "collapsed":
            emit_trajectory(result, scenario, out / "trajectory.csv",
                            samples=args.samples)
            emit_comparison(report, out / "comparison.csv")
    except OSError as exc:
        print(f"cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_IO

    term = result.trajectory.termination
    print(render_report(report), end="")
    if term == "collapsed":
        return EXIT_COLLAPSE
    if term == "singularity":
        return EXIT_INTEGRATION
    return EXIT_NO_COLLAPSE


def _cmd_sweep(args) -> int:
    try:
        config = load_config(args.config)
        validate(config)
        values = [float(v) for v in args.values.split(",") if v.strip()]
        result = sweep(config, args.parameter, values)
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValidationError,) as exc:
        for err in exc.errors:
            print(f"invalid config: {err}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"invalid sweep: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        emit_sweep(result, out / "sweep.csv")
        _write_json(out / "sweep.json", {
            "parameter": result.parameter,
            "monotonicity_numerical": result.monotonicity_numerical,
            "monotonicity_analytic": result.monotonicity_analytic,
            "points": [{
                "value": p.value, "a": p.a, "a_provenance": p.a_provenance,
                "t_c_numerical_s": p.t_c_numerical,
                "t_c_analytic_s": p.t_c_analytic,
                "collapsed": p.collapsed, "note": p.note,
            } for p in result.points],
        })
    except OSError as exc:
        print(f"cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_IO
    n_ok = sum(p.collapsed for p in result.points)
    print(f"swept {result.parameter} over {len(result.points)} points "
          f"({n_ok} collapsed); numerical t_c {result.monotonicity_numerical}, "
          f"analytic t_c {result.monotonicity_analytic}")
    return EXIT_COLLAPSE


def _cmd_check(args) -> int:
    try:
        config = load_config(args.config)
        scenario = validate(config)
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValidationError as exc:
        for err in exc.errors:
            print(f"invalid config: {err}", file=sys.stderr)
        return EXIT_INVALID
    coeff = scenario.coefficient
    inv = scenario.inventory
    print(f"config ok: a = {coeff.a:.9e} dyne/cm^4 ({coeff.provenance}); "
          f"p_g0 = {inv.p_g0:.9e} dyne/cm^2; n0 = {inv.n0:.9e} mol")
    if coeff.a <= 0.0:
        print("warning: a <= 0, this scenario cannot collapse")
    return EXIT_COLLAPSE


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="bubblecollapse",
        description="Collapse time of a gas bubble in viscous oil inside a "
                    "gerotor pump vane (CGS units throughout).")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="integrate one scenario and write reports")
    p_run.add_argument("--config", required=True, help="INI scenario file")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.add_argument("--samples", type=int, default=500,
                       help="rows in trajectory.csv (default 500)")
    p_run.add_argument("--allowable-angle-deg", type=float, default=17.0,
                       help="rotation budget for max safe rpm (default 17)")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="sweep one parameter over a grid")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--parameter", required=True,
                         choices=("rho", "mu", "p_m", "R0"))
    p_sweep.add_argument("--values", required=True,
                         help="comma-separated grid, strictly monotone")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_check = sub.add_parser("check", help="validate a config, print effective a")
    p_check.add_argument("--config", required=True)
    p_check.set_defaults(func=_cmd_check)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
