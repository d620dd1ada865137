"""Direct time integration and hysteresis frequency sweeps.

Everything algebraic in this package rests on the one-harmonic
steady-state approximation; this module is the independent check.  The
oscillator

    y'' = -2*zeta*y' - gamma*y^3 + f0 + f_amp*cos(omega*t)

is integrated with a classical fixed-step 4th-order scheme (the fixed
step keeps the Fourier measurement window exactly commensurate with the
drive period), the steady state is summarized by the window mean and the
first Fourier coefficient at the drive frequency, and sweeps seed each
frequency with the final state of the previous one, which is what makes
upward and downward branches differ across a hysteresis window.  The
drive phase is carried continuously across sweep steps; restarting the
phase at each new frequency would kick the oscillator and knock it off
its branch well before the fold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

DIVERGENCE_LIMIT = 1e6
DEFAULT_STEPS_PER_PERIOD = 2000
DEFAULT_TRANSIENT_PERIODS = 400
DEFAULT_MEASURE_PERIODS = 100


class DivergenceError(RuntimeError):
    """Trajectory left the basin of bounded motion."""

    def __init__(self, time, omega=None, direction=None):
        msg = f"trajectory diverged at t = {time:.6g}"
        if omega is not None:
            msg += f" (omega = {omega:.6g}"
            msg += f", {direction} sweep)" if direction else ")"
        super().__init__(msg)
        self.time = time
        self.omega = omega
        self.direction = direction


@dataclass(frozen=True)
class OscState:
    y: float
    v: float
    t: float = 0.0


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    y: np.ndarray
    v: np.ndarray


@dataclass(frozen=True)
class SweepRecord:
    omega: float
    direction: str
    a0_sim: float
    a1_sim: float


@njit(cache=True, nogil=True)
def _accel(y, v, drive, gamma, zeta, f0):  # pragma: no cover - jitted
    return -2.0 * zeta * v - gamma * y * y * y + f0 + drive


@njit(cache=True, nogil=True)
def _rk4_step(y, v, tau, phase0, omega, gamma, zeta, f0, famp, h):
    # pragma: no cover - jitted
    d1 = famp * math.cos(omega * tau + phase0)
    dm = famp * math.cos(omega * (tau + 0.5 * h) + phase0)
    d2 = famp * math.cos(omega * (tau + h) + phase0)
    k1y = v
    k1v = _accel(y, v, d1, gamma, zeta, f0)
    y2 = y + 0.5 * h * k1y
    v2 = v + 0.5 * h * k1v
    k2y = v2
    k2v = _accel(y2, v2, dm, gamma, zeta, f0)
    y3 = y + 0.5 * h * k2y
    v3 = v + 0.5 * h * k2v
    k3y = v3
    k3v = _accel(y3, v3, dm, gamma, zeta, f0)
    y4 = y + h * k3y
    v4 = v + h * k3v
    k4y = v4
    k4v = _accel(y4, v4, d2, gamma, zeta, f0)
    yn = y + h * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0
    vn = v + h * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0
    return yn, vn


@njit(cache=True, nogil=True)
def _rk4_store(y0, v0, phase0, omega, gamma, zeta, f0, famp, h, n_steps, ys, vs):
    # pragma: no cover - jitted
    y = y0
    v = v0
    ys[0] = y
    vs[0] = v
    for i in range(n_steps):
        y, v = _rk4_step(y, v, i * h, phase0, omega, gamma, zeta, f0, famp, h)
        ys[i + 1] = y
        vs[i + 1] = v
        if not (abs(y) < DIVERGENCE_LIMIT and abs(v) < 1e12):
            return i + 1
    return -1


@njit(cache=True, nogil=True)
def _rk4_measure(y0, v0, phase0, omega, gamma, zeta, f0, famp, h,
                 transient_steps, measure_steps):
    # pragma: no cover - jitted
    y = y0
    v = v0
    for i in range(transient_steps):
        y, v = _rk4_step(y, v, i * h, phase0, omega, gamma, zeta, f0, famp, h)
        if not (abs(y) < DIVERGENCE_LIMIT and abs(v) < 1e12):
            return 0.0, 0.0, 0.0, y, v, i + 1
    mphase = phase0 + omega * transient_steps * h
    sum_y = 0.0
    sum_c = 0.0
    sum_s = 0.0
    for i in range(measure_steps):
        arg = omega * i * h + mphase
        sum_y += y
        sum_c += y * math.cos(arg)
        sum_s += y * math.sin(arg)
        y, v = _rk4_step(y, v, i * h, mphase, omega, gamma, zeta, f0, famp, h)
        if not (abs(y) < DIVERGENCE_LIMIT and abs(v) < 1e12):
            return 0.0, 0.0, 0.0, y, v, transient_steps + i + 1
    a0 = sum_y / measure_steps
    a1c = 2.0 * sum_c / measure_steps
    a1s = 2.0 * sum_s / measure_steps
    return a0, a1c, a1s, y, v, -1


def integrate(
    pr,
    omega: float,
    init: OscState,
    periods: int,
    steps_per_period: int = DEFAULT_STEPS_PER_PERIOD,
) -> Trajectory:
    """Fixed-step RK4 trajectory over an integer number of drive periods.

    The drive phase at the initial instant is omega * init.t, matching a
    forcing term cos(omega * t) in absolute time.
    """
    if not omega > 0:
        raise ValueError("omega must be positive")
    if steps_per_period < 500:
        raise ValueError("steps_per_period must be >= 500")
    if periods < 1:
        raise ValueError("periods must be >= 1")
    h = 2.0 * math.pi / (omega * steps_per_period)
    n_steps = periods * steps_per_period
    ys = np.empty(n_steps + 1)
    vs = np.empty(n_steps + 1)
    blow = _rk4_store(
        init.y, init.v, omega * init.t, omega,
        pr.gamma, pr.zeta, pr.f0, pr.f_amp, h, n_steps, ys, vs,
    )
    ts = init.t + h * np.arange(n_steps + 1)
    if blow >= 0:
        raise DivergenceError(ts[blow], omega=omega)
    return Trajectory(t=ts, y=ys, v=vs)


def measure_steady(traj: Trajectory, omega: float, measure_periods: int):
    """(mean, first-harmonic amplitude) over the trailing whole periods.

    The window covers exactly ``measure_periods`` drive periods ending at
    the trajectory's last sample; with the fixed commensurate step the
    rectangle rule is spectrally accurate there.
    """
    h = traj.t[1] - traj.t[0]
    per = 2.0 * math.pi / omega
    k = int(round(measure_periods * per / h))
    if k < 1 or k > len(traj.y) - 1:
        raise ValueError("trajectory does not cover the measurement window")
    y = traj.y[-k - 1 : -1]
    t = traj.t[-k - 1 : -1]
    a0 = float(np.mean(y))
    cs = float(np.dot(y, np.cos(omega * t)))
    sn = float(np.dot(y, np.sin(omega * t)))
    a1 = 2.0 * math.hypot(cs, sn) / k
    return a0, a1


def equilibrium_displacement(pr) -> float:
    """Rest displacement of the unforced oscillator, (f0/gamma)^(1/3)."""
    return (pr.f0 / pr.gamma) ** (1.0 / 3.0)


def bifurcation_sweep(
    pr,
    omega_range,
    n: int,
    transient_periods: int = DEFAULT_TRANSIENT_PERIODS,
    measure_periods: int = DEFAULT_MEASURE_PERIODS,
    steps_per_period: int = DEFAULT_STEPS_PER_PERIOD,
    initial_state: OscState | None = None,
) -> list[SweepRecord]:
    """Upward then downward frequency sweep with state continuation.

    Each frequency step starts from the final state of the previous one
    and the drive phase continues without a kink; the downward pass
    continues from the end of the upward pass.  This mirrors the
    experimental protocol and exposes hysteresis: records on the two
    passes disagree across any fold window.
    """
    lo, hi = float(omega_range[0]), float(omega_range[1])
    if not (0 < lo <= hi):
        raise ValueError("omega_range must lie inside (0, inf)")
    if n < 2:
        raise ValueError("n must be >= 2")
    if steps_per_period < 500:
        raise ValueError("steps_per_period must be >= 500")
    omegas = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    if initial_state is None:
        initial_state = OscState(y=equilibrium_displacement(pr), v=0.0, t=0.0)

    records = []
    y, v = initial_state.y, initial_state.v
    phase = initial_state.t * omegas[0]
    elapsed = initial_state.t
    for direction, seq in (("up", omegas), ("down", list(reversed(omegas)))):
        for omega in seq:
            h = 2.0 * math.pi / (omega * steps_per_period)
            steps = (transient_periods + measure_periods) * steps_per_period
            a0, a1c, a1s, y, v, blow = _rk4_measure(
                y, v, phase, omega, pr.gamma, pr.zeta, pr.f0, pr.f_amp, h,
                transient_periods * steps_per_period,
                measure_periods * steps_per_period,
            )
            if blow >= 0:
                raise DivergenceError(elapsed + blow * h, omega=omega,
                                      direction=direction)
            phase = math.fmod(phase + omega * steps * h, 2.0 * math.pi)
            elapsed += steps * h
            records.append(
                SweepRecord(
                    omega=omega,
                    direction=direction,
                    a0_sim=a0,
                    a1_sim=math.hypot(a1c, a1s),
                )
            )
    return records


def detect_jumps(records, rel_threshold: float = 0.25, persistence: int = 3):
    """Frequencies where a sweep branch ends in a discontinuity.

    Returns (direction, omega_before, omega_after) triples for steps
    whose amplitude changes by more than ``rel_threshold`` relative to
    the local scale; the branch endpoint lies inside that step.  Near a
    fold the basin boundary is fractal and single samples can land on the
    wrong attractor, so a candidate only counts when the following
    ``persistence`` samples all stay on the new level.
    """
    out = []
    for d in ("up", "down"):
        seq = [r for r in records if r.direction == d]
        for i in range(len(seq) - 1):
            prev, cur = seq[i], seq[i + 1]
            scale = max(abs(prev.a1_sim), abs(cur.a1_sim), 1e-12)
            if abs(cur.a1_sim - prev.a1_sim) <= rel_threshold * scale:
                continue
            tail = seq[i + 1 : i + 1 + persistence]
            settled = all(
                abs(r.a1_sim - cur.a1_sim)
                < rel_threshold * max(abs(cur.a1_sim), 1e-12)
                for r in tail
            )
            if settled:
                out.append((d, prev.omega, cur.omega))
    return out


def hysteresis_window(records, rel_threshold: float = 0.05):
    """Frequency interval where the up and down passes disagree, or None."""
    up = {r.omega: r.a1_sim for r in records if r.direction == "up"}
    down = {r.omega: r.a1_sim for r in records if r.direction == "down"}
    split = [
        o
        for o in sorted(up)
        if o in down
        and abs(up[o] - down[o]) > rel_threshold * max(abs(up[o]), abs(down[o]), 1e-12)
    ]
    if not split:
        return None
    return min(split), max(split)
