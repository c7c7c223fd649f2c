"""Trapped-gas inventory and the pressure coefficient driving the collapse.

The bubble encloses a fixed amount of perfect gas.  Its initial partial
pressure p_g0 = 3 n0 R_univ T / (4 pi R0^3) balances against the mean
vane pressure p_m; the net drive enters the radial equation through the
single coefficient

    a = p_m / R0^2 - 3 n0 R_univ T / (4 pi R0^5)   [dyne/cm^4]

which is equivalently (p_m - p_g0) / R0^2.  Positive a drives collapse;
a <= 0 means the gas pushes back harder than the oil squeezes.
"""

import math
from dataclasses import dataclass

from .quantities import BubbleGeometry, FluidProperties, GasSpec


@dataclass(frozen=True)
class GasInventory:
    V0: float     # initial bubble volume, cm^3
    M: float      # trapped gas mass, g
    n0: float     # moles of gas
    p_g0: float   # initial gas pressure, dyne/cm^2


@dataclass(frozen=True)
class PressureCoefficient:
    a: float            # dyne/cm^4
    provenance: str     # "computed" | "overridden"


def gas_inventory(gas: GasSpec, geometry: BubbleGeometry) -> GasInventory:
    """Volume, mass, mole count and initial pressure of the trapped gas."""
    R0 = geometry.R0
    if not (R0 > 0):
        raise ValueError(f"R0={R0!r}: initial radius must be positive")
    V0 = 4.0 / 3.0 * math.pi * R0 ** 3
    M = gas.rho_gas * V0
    n0 = M / gas.W
    p_g0 = 3.0 * n0 * gas.R_univ * gas.T / (4.0 * math.pi * R0 ** 3)
    return GasInventory(V0=V0, M=M, n0=n0, p_g0=p_g0)


def pressure_coefficient(fluid: FluidProperties, gas: GasSpec,
                         geometry: BubbleGeometry,
                         a_override: float | None = None) -> PressureCoefficient:
    """Resolve the collapse-driving coefficient a.

    An explicit override wins; otherwise a is computed from the gas
    inventory.  The resolution is deterministic: identical inputs give
    bitwise identical output.
    """
    if a_override is not None:
        if not math.isfinite(a_override):
            raise ValueError(f"a_override={a_override!r}: must be finite")
        return PressureCoefficient(a=float(a_override), provenance="overridden")
    R0 = geometry.R0
    inv = gas_inventory(gas, geometry)
    a = fluid.p_m / R0 ** 2 - 3.0 * inv.n0 * gas.R_univ * gas.T / (4.0 * math.pi * R0 ** 5)
    return PressureCoefficient(a=a, provenance="computed")
