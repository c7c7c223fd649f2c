"""Run the reference vane scenario and print the engineering summary.

Usage: python scripts/run_reference.py [--rpm 2000] [--out DIR]

With --out the same four files the CLI produces (report.json,
report.txt, trajectory.csv, comparison.csv) are written to DIR.
"""

import argparse
from pathlib import Path

from bubblecollapse import (BubbleGeometry, FluidProperties, GasSpec,
                            ScenarioConfig, integrate, validate)
from bubblecollapse.cli import (build_report, emit_comparison, emit_trajectory,
                                render_report, _write_json, _write_lines)


def reference_config(rpm: float) -> ScenarioConfig:
    return ScenarioConfig(
        fluid=FluidProperties(rho=8.2, mu=0.0287, p_m=1e7),   # castor oil column
        gas=GasSpec(rho_gas=0.01177, W=28.97, T=300.0),       # trapped air
        geometry=BubbleGeometry(R0=0.05),                     # 0.5 mm bubble
        a_override=1e7,                                       # dyne/cm^4
        pump_rpm=rpm)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rpm", type=float, default=2000.0)
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()

    scenario = validate(reference_config(args.rpm))
    result = integrate(scenario)
    report = build_report(scenario, result, allowable_angle_deg=17.0)
    print(render_report(report), end="")

    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        _write_json(args.out / "report.json", report)
        _write_lines(args.out / "report.txt", [render_report(report)])
        if result.trajectory.termination == "collapsed":
            emit_trajectory(result, scenario, args.out / "trajectory.csv")
            emit_comparison(report, args.out / "comparison.csv")
        print(f"wrote {args.out}/")


if __name__ == "__main__":
    main()
