"""Time integration of the radius equation down to collapse.

``integrate`` drives an embedded Dormand-Prince 5(4) pair with PI-free
step control and cubic Hermite dense output.  The collapse event fires
when R crosses collapse_epsilon * R0; the crossing is root-found on the
dense output and the collapse time t_c is then obtained by extrapolating
a quadratic through three dense samples just behind the event down to
R = 0.  ``integrate_fixed_oracle`` is an independent fixed-step RK4 with
bisection event location that shares only the extrapolation rule, used
to cross-check the adaptive result.

Termination is reported, not raised: "collapsed", "max_time" (horizon
reached, or growth proved collapse impossible) or "singularity" (step
size underflow near the radius floor).
"""

import math
from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .collapse_ode import OdeParams, BubbleState, SingularityError, radial_acceleration
from .quantities import IntegratorSettings, ValidatedScenario, validate

__all__ = [
    "IntegratorSettings", "Trajectory", "EventQuality", "IntegrationDiagnostics",
    "CollapseResult", "integrate", "integrate_fixed_oracle", "sample_trajectory",
]

# Dormand-Prince 5(4) tableau; row i of _A feeds stage i+2
_C = (0.2, 0.3, 0.8, 8.0 / 9.0, 1.0)
_A = (
    (0.2,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0,
     -5103.0 / 18656.0),
)
_B = (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0)
_E = (71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0,
      22.0 / 525.0, -1.0 / 40.0)

_MAX_REJECTS = 200


@dataclass
class Trajectory:
    """Accepted states plus enough derivative data for dense evaluation."""

    t: np.ndarray        # s, strictly increasing
    R: np.ndarray        # cm
    Rdot: np.ndarray     # cm/s
    Rddot: np.ndarray    # cm/s^2
    termination: str     # "collapsed" | "max_time" | "singularity"

    @property
    def coverage(self):
        return (float(self.t[0]), float(self.t[-1]))

    def states(self):
        return [BubbleState(t=float(ti), R=float(Ri), Rdot=float(Vi))
                for ti, Ri, Vi in zip(self.t, self.R, self.Rdot)]

    def sample(self, times):
        """Dense (R, Rdot) at arbitrary times inside the stored span.

        Piecewise cubic Hermite between accepted states: exact at the
        nodes, C1 across them.
        """
        scalar = np.isscalar(times)
        times = np.atleast_1d(np.asarray(times, dtype=float))
        lo, hi = self.coverage
        slack = 1e-12 * max(abs(lo), abs(hi), 1e-300)
        if times.size and (times.min() < lo - slack or times.max() > hi + slack):
            raise ValueError(
                f"sample time outside trajectory span [{lo!r}, {hi!r}]")
        if len(self.t) < 2:
            R = np.full_like(times, self.R[0])
            V = np.full_like(times, self.Rdot[0])
            return (float(R[0]), float(V[0])) if scalar else (R, V)
        idx = np.clip(np.searchsorted(self.t, times, side="right") - 1,
                      0, len(self.t) - 2)
        h = self.t[idx + 1] - self.t[idx]
        th = np.clip((times - self.t[idx]) / h, 0.0, 1.0)
        R = _hermite(th, h, self.R[idx], self.Rdot[idx],
                     self.R[idx + 1], self.Rdot[idx + 1])
        V = _hermite(th, h, self.Rdot[idx], self.Rddot[idx],
                     self.Rdot[idx + 1], self.Rddot[idx + 1])
        return (float(R[0]), float(V[0])) if scalar else (R, V)


def _hermite(th, h, y0, f0, y1, f1):
    t2 = th * th
    t3 = t2 * th
    return ((2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + th) * h * f0
            + (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * h * f1)


@dataclass(frozen=True)
class EventQuality:
    """How the collapse event was pinned down and extended to R = 0."""

    t_event: float             # s, where R crossed collapse_epsilon * R0
    extrapolation_dt: float    # s added beyond the event to reach R = 0
    sample_spacing: float      # s between the three fit samples
    used_linear_fallback: bool
    tail_coefficients: tuple   # (c0, c1, c2) of R(t_event + tau) = c0 + c1 tau + c2 tau^2


@dataclass
class IntegrationDiagnostics:
    accepted_steps: int = 0
    rejected_steps: int = 0
    rhs_evaluations: int = 0
    first_step: float = 0.0
    final_step: float = 0.0
    notes: list = field(default_factory=list)


@dataclass
class CollapseResult:
    t_c: float | None          # s; None when the bubble never collapsed
    trajectory: Trajectory
    event_quality: EventQuality | None
    diagnostics: IntegrationDiagnostics


def _extrapolate_to_zero(t_event, R_event, V_event, sample_radius, t_min):
    """Quadratic through three samples ending at the event, rooted at R = 0.

    ``sample_radius(t)`` must return the radius at any t in
    [t_min, t_event].  Shared verbatim by both integrators so their
    collapse times stay comparable.
    """
    tiny = 1e-300
    delta = 0.5 * R_event / max(abs(V_event), tiny)
    if t_event - t_min > 0.0:
        delta = min(delta, 0.5 * (t_event - t_min))
    fallback = False
    tau = None
    if delta > 0.0:
        R1 = sample_radius(t_event - 2.0 * delta)
        R2 = sample_radius(t_event - delta)
        c0 = R_event
        c2 = (R1 - 2.0 * R2 + c0) / (2.0 * delta * delta)
        c1 = (c0 - R2) / delta + delta * c2
        tau = _smallest_positive_root(c0, c1, c2)
    if tau is None:
        fallback = True
        c0, c2 = R_event, 0.0
        c1 = -abs(V_event) if V_event != 0.0 else -1.0
        tau = c0 / abs(c1)
        delta = max(delta, 0.0)
    quality = EventQuality(t_event=t_event, extrapolation_dt=tau,
                           sample_spacing=delta, used_linear_fallback=fallback,
                           tail_coefficients=(c0, c1, c2))
    return t_event + tau, quality


def _smallest_positive_root(c0, c1, c2):
    # roots of c2 x^2 + c1 x + c0 = 0, stable form; None if no positive root
    if c2 == 0.0:
        if c1 < 0.0:
            return -c0 / c1
        return None
    disc = c1 * c1 - 4.0 * c2 * c0
    if disc < 0.0:
        return None
    sq = math.sqrt(disc)
    q = -0.5 * (c1 + math.copysign(sq, c1)) if c1 != 0.0 else 0.5 * sq * (1 if c2 < 0 else -1)
    roots = []
    if q != 0.0:
        roots.append(q / c2)
        roots.append(c0 / q)
    else:
        if -c0 / c2 >= 0.0:
            roots.append(math.sqrt(-c0 / c2))
    positive = [r for r in roots if r > 0.0 and math.isfinite(r)]
    return min(positive) if positive else None


def _initial_step(R0, V0, A0, rhs, scale_R, scale_V, max_step, horizon):
    # standard two-trial startup heuristic
    d0 = math.sqrt(0.5 * ((R0 / scale_R) ** 2 + (V0 / scale_V) ** 2))
    d1 = math.sqrt(0.5 * ((V0 / scale_R) ** 2 + (A0 / scale_V) ** 2))
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, horizon, max_step)
    try:
        V1, A1 = rhs(R0 + h0 * V0, V0 + h0 * A0)
        d2 = math.sqrt(0.5 * (((V1 - V0) / scale_R) ** 2
                              + ((A1 - A0) / scale_V) ** 2)) / h0
    except (SingularityError, OverflowError, ZeroDivisionError):
        d2 = d1
    dm = max(d1, d2)
    h1 = (0.01 / dm) ** 0.2 if dm > 1e-15 else max(1e-6, h0 * 1e-3)
    return max(min(100.0 * h0, h1, horizon, max_step), 1e-15)


def integrate(scenario, settings: IntegratorSettings | None = None) -> CollapseResult:
    """Adaptive collapse run; returns the trajectory and extrapolated t_c.

    Accepts a validated scenario (a plain config is validated on the
    way in).  t_c is None unless termination is "collapsed".
    """
    if not isinstance(scenario, ValidatedScenario):
        scenario = validate(scenario)
    s = settings if settings is not None else scenario.integrator
    params = OdeParams.from_scenario(scenario)
    rho, mu, a = params.rho, params.mu, params.a
    R0 = scenario.geometry.R0
    thr = s.collapse_epsilon * R0
    cap = s.growth_cap * R0
    floor = s.singularity_floor
    rtol = s.rel_tol
    atol_R, atol_V = s.abs_tol
    diag = IntegrationDiagnostics()

    def rhs(R, V):
        if R <= floor:
            raise SingularityError(R, floor)
        return V, radial_acceleration(R, V, rho, mu, a)

    t, R, V = 0.0, R0, 0.0
    kV1 = radial_acceleration(R, V, rho, mu, a)
    kR1 = V
    diag.rhs_evaluations = 1
    ts, Rs, Vs, As = [t], [R], [V], [kV1]

    h = _initial_step(R, V, kV1, rhs, atol_R + rtol * abs(R),
                      atol_V + rtol * abs(V), s.max_step, s.max_time)
    diag.rhs_evaluations += 2
    diag.first_step = h

    termination = None
    event = None
    rejects_in_a_row = 0
    kR = [0.0] * 7
    kV = [0.0] * 7

    while termination is None:
        if s.max_time - t <= 1e-16 * s.max_time:
            termination = "max_time"
            break
        h = min(h, s.max_step, s.max_time - t)
        if t + h == t:
            termination = "singularity"
            diag.notes.append(f"step size underflow at t={t!r} s")
            break

        kR[0], kV[0] = kR1, kV1
        failed = False
        try:
            for i in range(5):
                ar = _A[i]
                sR = 0.0
                sV = 0.0
                for j in range(len(ar)):
                    sR += ar[j] * kR[j]
                    sV += ar[j] * kV[j]
                kR[i + 1], kV[i + 1] = rhs(R + h * sR, V + h * sV)
            R5 = R + h * (_B[0] * kR[0] + _B[2] * kR[2] + _B[3] * kR[3]
                          + _B[4] * kR[4] + _B[5] * kR[5])
            V5 = V + h * (_B[0] * kV[0] + _B[2] * kV[2] + _B[3] * kV[3]
                          + _B[4] * kV[4] + _B[5] * kV[5])
            kR[6], kV[6] = rhs(R5, V5)
        except (SingularityError, OverflowError, ZeroDivisionError):
            failed = True
        diag.rhs_evaluations += 6

        if not failed:
            eR = h * sum(_E[j] * kR[j] for j in range(7))
            eV = h * sum(_E[j] * kV[j] for j in range(7))
            sc_R = atol_R + rtol * max(abs(R), abs(R5))
            sc_V = atol_V + rtol * max(abs(V), abs(V5))
            err = math.sqrt(0.5 * ((eR / sc_R) ** 2 + (eV / sc_V) ** 2))
            failed = not math.isfinite(err) or err > 1.0
        else:
            err = math.inf

        if failed:
            diag.rejected_steps += 1
            rejects_in_a_row += 1
            if rejects_in_a_row > _MAX_REJECTS:
                termination = "singularity"
                diag.notes.append(
                    f"no acceptable step found near t={t!r} s after "
                    f"{_MAX_REJECTS} rejections")
                break
            h *= 0.2 if not math.isfinite(err) else max(0.2, 0.9 * err ** -0.2)
            continue

        rejects_in_a_row = 0
        diag.accepted_steps += 1
        diag.final_step = h
        t_new = t + h

        if R > thr >= R5:
            t_e, R_e, V_e, A_e = _locate_event(
                t, R, V, kV[0], t_new, R5, V5, kV[6], thr, rho, mu, a)
            ts.append(t_e)
            Rs.append(R_e)
            Vs.append(V_e)
            As.append(A_e)
            termination = "collapsed"
            break

        ts.append(t_new)
        Rs.append(R5)
        Vs.append(V5)
        As.append(kV[6])
        t, R, V = t_new, R5, V5
        kR1, kV1 = kR[6], kV[6]

        if R >= cap:
            termination = "max_time"
            diag.notes.append(
                f"radius reached {R!r} cm (cap {cap!r} cm) at t={t!r} s while "
                "growing monotonically; collapse is impossible, so the run was "
                "cut short and reported as no collapse within the horizon")
            break
        if t >= s.max_time:
            termination = "max_time"
            break

        if err == 0.0:
            h *= 5.0
        else:
            h *= min(5.0, max(0.2, 0.9 * err ** -0.2))

    traj = Trajectory(t=np.asarray(ts), R=np.asarray(Rs), Rdot=np.asarray(Vs),
                      Rddot=np.asarray(As), termination=termination)
    t_c = None
    if termination == "collapsed":
        t_c, event = _extrapolate_to_zero(
            ts[-1], Rs[-1], Vs[-1], lambda tq: traj.sample(tq)[0], ts[0])
    return CollapseResult(t_c=t_c, trajectory=traj, event_quality=event,
                          diagnostics=diag)


def _locate_event(t0, R0_, V0_, A0_, t1, R1_, V1_, A1_, thr, rho, mu, a):
    """Root-find R = thr on the Hermite of one accepted interval."""
    h = t1 - t0

    def g(tq):
        th = (tq - t0) / h
        return _hermite(th, h, R0_, V0_, R1_, V1_) - thr

    if g(t1) == 0.0:
        t_e = t1
    else:
        t_e = brentq(g, t0, t1, xtol=1e-15, rtol=8.9e-16)
    th = (t_e - t0) / h
    R_e = _hermite(th, h, R0_, V0_, R1_, V1_)
    V_e = _hermite(th, h, V0_, A0_, V1_, A1_)
    if t_e <= t0:   # degenerate: crossing at the left node itself
        t_e, R_e, V_e = t0, R0_, V0_
    A_e = radial_acceleration(R_e, V_e, rho, mu, a) if R_e > 0 else A1_
    return t_e, R_e, V_e, A_e


def integrate_fixed_oracle(scenario, step: float,
                           settings: IntegratorSettings | None = None) -> CollapseResult:
    """Classical RK4 on a fixed grid, with bisection event location.

    Independent of the adaptive path except for the shared collapse
    extrapolation rule; meant as a convergence/cross-check oracle, so it
    favours simplicity over speed.
    """
    if not isinstance(scenario, ValidatedScenario):
        scenario = validate(scenario)
    if not (isinstance(step, (int, float)) and math.isfinite(step) and step > 0):
        raise ValueError(f"step={step!r}: need a positive finite step size")
    s = settings if settings is not None else scenario.integrator
    rho, mu, a = (scenario.fluid.rho, scenario.fluid.mu, scenario.coefficient.a)
    R0 = scenario.geometry.R0
    thr = s.collapse_epsilon * R0
    cap = s.growth_cap * R0
    floor = s.singularity_floor
    h = float(step)
    diag = IntegrationDiagnostics(first_step=h, final_step=h)

    def advance(R, V, dt):
        # one RK4 step; raises SingularityError off the radius floor
        if R <= floor:
            raise SingularityError(R, floor)
        k1R, k1V = V, radial_acceleration(R, V, rho, mu, a)
        R2, V2 = R + 0.5 * dt * k1R, V + 0.5 * dt * k1V
        if R2 <= floor:
            raise SingularityError(R2, floor)
        k2R, k2V = V2, radial_acceleration(R2, V2, rho, mu, a)
        R3, V3 = R + 0.5 * dt * k2R, V + 0.5 * dt * k2V
        if R3 <= floor:
            raise SingularityError(R3, floor)
        k3R, k3V = V3, radial_acceleration(R3, V3, rho, mu, a)
        R4, V4 = R + dt * k3R, V + dt * k3V
        if R4 <= floor:
            raise SingularityError(R4, floor)
        k4R, k4V = V4, radial_acceleration(R4, V4, rho, mu, a)
        return (R + dt / 6.0 * (k1R + 2.0 * k2R + 2.0 * k3R + k4R),
                V + dt / 6.0 * (k1V + 2.0 * k2V + 2.0 * k3V + k4V))

    t, R, V = 0.0, R0, 0.0
    ts = [0.0]
    Rs = [R]
    Vs = [V]
    As = [radial_acceleration(R, V, rho, mu, a)]
    diag.rhs_evaluations = 1
    termination = None
    event = None
    t_c = None
    n = 0

    while termination is None:
        if t >= s.max_time:
            termination = "max_time"
            break
        dt = min(h, s.max_time - t)
        try:
            R_new, V_new = advance(R, V, dt)
            diag.rhs_evaluations += 4
            bad = not (math.isfinite(R_new) and math.isfinite(V_new))
        except (SingularityError, OverflowError, ZeroDivisionError):
            diag.rhs_evaluations += 4
            bad = True
            R_new = V_new = math.nan

        if bad or R_new <= thr:
            t_e, R_e, V_e = _bisect_event(advance, t, R, V, dt, thr)
            diag.rhs_evaluations += 4 * 64
            if t_e > ts[-1]:
                ts.append(t_e)
                Rs.append(R_e)
                Vs.append(V_e)
                As.append(radial_acceleration(R_e, V_e, rho, mu, a))
            termination = "collapsed"

            def sample_radius(tq):
                j = min(bisect_right(ts, tq) - 1, len(ts) - 1)
                j = max(j, 0)
                if tq <= ts[j]:
                    return Rs[j]
                out, _ = advance(Rs[j], Vs[j], tq - ts[j])
                return out

            t_c, event = _extrapolate_to_zero(t_e, R_e, V_e, sample_radius, 0.0)
            break

        n += 1
        t = n * h if dt == h else t + dt
        R, V = R_new, V_new
        ts.append(t)
        Rs.append(R)
        Vs.append(V)
        As.append(radial_acceleration(R, V, rho, mu, a))
        diag.rhs_evaluations += 1
        diag.accepted_steps += 1
        if R >= cap:
            termination = "max_time"
            diag.notes.append(
                f"radius reached the growth cap {cap!r} cm at t={t!r} s; "
                "collapse is impossible, reported as no collapse within the horizon")
            break

    traj = Trajectory(t=np.asarray(ts), R=np.asarray(Rs), Rdot=np.asarray(Vs),
                      Rddot=np.asarray(As), termination=termination)
    return CollapseResult(t_c=t_c, trajectory=traj, event_quality=event,
                          diagnostics=diag)


def _bisect_event(advance, t0, R, V, h, thr):
    """Shrink [0, h] around the first sub-step whose radius reaches thr."""
    lo, hi = 0.0, h
    R_lo, V_lo = R, V
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        try:
            R_m, V_m = advance(R, V, mid)
            good = math.isfinite(R_m) and math.isfinite(V_m) and R_m > thr
        except (SingularityError, OverflowError, ZeroDivisionError):
            good = False
        if good:
            lo, R_lo, V_lo = mid, R_m, V_m
        else:
            hi = mid
    return t0 + lo, R_lo, V_lo


def sample_trajectory(result, times):
    """Dense (R, Rdot) from a result or trajectory; strict about the span."""
    traj = result.trajectory if isinstance(result, CollapseResult) else result
    return traj.sample(times)
