"""Sweep the oil density and tabulate both collapse-time estimates.

Usage: python scripts/sweep_density.py [--values 4.1,8.2,16.4] [--out FILE.csv]

Heavier oil carries more inertia, so both estimates grow ~ sqrt(rho);
the table shows how far the numerical time drifts from the analytic one
as the collapse slows down.
"""

import argparse
from pathlib import Path

from bubblecollapse import sweep
from bubblecollapse.cli import emit_sweep
from run_reference import reference_config


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--values", default="4.1,8.2,16.4",
                    help="comma-separated densities, g/cm^3, strictly monotone")
    ap.add_argument("--out", type=Path, default=None, help="optional CSV path")
    args = ap.parse_args()

    grid = [float(v) for v in args.values.split(",") if v.strip()]
    result = sweep(reference_config(rpm=2000.0), "rho", grid)

    print(f"{'rho g/cm^3':>12} {'t_c numerical s':>16} {'t_c analytic s':>16} "
          f"{'ratio':>8}  note")
    for p in result.points:
        if p.collapsed:
            ratio = p.t_c_numerical / p.t_c_analytic
            print(f"{p.value:12.4f} {p.t_c_numerical:16.9e} "
                  f"{p.t_c_analytic:16.9e} {ratio:8.4f}")
        else:
            print(f"{p.value:12.4f} {'-':>16} {'-':>16} {'-':>8}  {p.note}")
    print(f"numerical t_c is {result.monotonicity_numerical}, "
          f"analytic t_c is {result.monotonicity_analytic}")

    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        emit_sweep(result, args.out)
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
