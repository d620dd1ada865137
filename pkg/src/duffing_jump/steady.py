"""Steady-state maps and amplitude-frequency response curves.

The one-harmonic steady state y = A0 + A1*cos(omega*t + theta) of the
forced single-well cubic oscillator satisfies three balance equations in
(A0, A1, theta).  After phase elimination they reduce to an implicit
polynomial f(omega, A0) = 0 of degree 9 (coefficients generated by
:mod:`duffing_jump.algebra`, never typed in) together with the cubic
constant-force balance linking A0 and A1.  This module evaluates those
maps numerically and traces multivalued response curves with
nearest-neighbor branch continuation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

from duffing_jump import algebra
from duffing_jump.poly import RealPoly, real_roots
from duffing_jump.util import parallel_map

RADICAND_TOL = -1e-12  # tiny negative radicands from rounding clamp to zero


@dataclass(frozen=True)
class Params:
    """Oscillator parameters: y'' + 2*zeta*y' + gamma*y^3 = f0 + f_amp*cos."""

    gamma: float
    zeta: float
    f_amp: float
    f0: float

    def __post_init__(self):
        for name in ("gamma", "zeta", "f_amp", "f0"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
        if self.gamma <= 0:
            raise ValueError("gamma must be > 0 (single-well cubic stiffness)")
        if self.zeta <= 0:
            raise ValueError("zeta must be > 0 (undamped regime unsupported)")
        if self.f_amp < 0 or self.f0 < 0:
            raise ValueError("forcing amplitudes must be >= 0")

    @property
    def c(self) -> float:
        """The combination gamma * F^2 used by the singular-point study."""
        return self.gamma * self.f_amp**2

    def with_value(self, name: str, value: float) -> "Params":
        return replace(self, **{name: value})


@dataclass(frozen=True)
class SteadyState:
    omega: float
    a0: float
    a1: float
    theta: float


# reference parameter set used throughout the docs and CLI defaults
REFERENCE = Params(gamma=0.0783, zeta=0.025, f_amp=0.1, f0=0.4)

_COEFF_TERMS = None


def _coefficient_terms():
    """Derived c_k as flat (float coeff, exponent) term lists for speed."""
    global _COEFF_TERMS
    if _COEFF_TERMS is None:
        idx = {s: i for i, s in enumerate(algebra.SYMBOLS)}
        order = [idx["X"], idx["gamma"], idx["zeta"], idx["F"], idx["F0"]]
        table = []
        for ck in algebra.response_coefficients():
            table.append(
                [
                    (float(c), tuple(e[i] for i in order))
                    for e, c in ck.terms.items()
                ]
            )
        _COEFF_TERMS = table
    return _COEFF_TERMS


def build_f_poly(pr: Params, omega: float) -> RealPoly:
    """Degree-9 implicit response polynomial in A0 at one frequency."""
    if not (omega > 0 and math.isfinite(omega)):
        raise ValueError(f"omega must be positive and finite, got {omega}")
    vals = (omega * omega, pr.gamma, pr.zeta, pr.f_amp, pr.f0)
    coeffs = []
    for terms in _coefficient_terms():
        total = 0.0
        for c, exps in terms:
            t = c
            for v, e in zip(vals, exps):
                if e:
                    t *= v**e
            total += t
        coeffs.append(total)
    return RealPoly(coeffs)


def f_relative_residual(pr: Params, omega: float, a0: float) -> float:
    """|f(omega, a0)| divided by the largest monomial magnitude."""
    p = build_f_poly(pr, omega)
    scale = max(abs(c) * abs(a0) ** k for k, c in enumerate(p.coeffs))
    if scale == 0.0:
        return abs(p(a0))
    return abs(p(a0)) / scale


def a1_radicand(pr: Params, a0: float) -> float:
    if a0 == 0.0:
        raise ZeroDivisionError(
            "a0 = 0 is only consistent with f0 = 0 (symmetric oscillator)"
        )
    return 2.0 * (pr.f0 - pr.gamma * a0**3) / (3.0 * pr.gamma * a0)


def a1_from_a0(pr: Params, a0: float):
    """Harmonic amplitude from the constant-force balance, or None.

    Returns sqrt(2*(f0 - gamma*a0^3) / (3*gamma*a0)) when the radicand is
    non-negative (tiny negative values within RADICAND_TOL clamp to 0);
    None when no real amplitude exists.
    """
    rad = a1_radicand(pr, a0)
    if rad < RADICAND_TOL:
        return None
    return math.sqrt(max(rad, 0.0))


def a0_from_a1(pr: Params, a1: float) -> float:
    """The unique real root in A0 of the constant-force balance.

    Cardano form: A0 = Y - A1^2/(2Y) with
    Y = cbrt( sqrt(A1^6/8 + f0^2/(4 gamma^2)) + f0/(2 gamma) ).
    """
    if a1 < 0:
        raise ValueError("a1 must be >= 0")
    if pr.f0 <= 0:
        raise ValueError("a0_from_a1 requires f0 > 0")
    y = (
        math.sqrt(a1**6 / 8.0 + pr.f0**2 / (4.0 * pr.gamma**2))
        + pr.f0 / (2.0 * pr.gamma)
    ) ** (1.0 / 3.0)
    return y - a1 * a1 / (2.0 * y)


def g_residual(pr: Params, omega: float, a1: float) -> float:
    """Residual of the implicit equation linking A1 and omega.

    g = A1^2*(3*gamma*A0^2 + (3/4)*gamma*A1^2 - omega^2)^2
        + 4*omega^2*zeta^2*A1^2 - F^2, with A0 recovered from A1.
    """
    if not omega > 0:
        raise ValueError("omega must be positive")
    if a1 < 0:
        raise ValueError("a1 must be >= 0")
    a0 = a0_from_a1(pr, a1)
    detune = 3.0 * pr.gamma * a0**2 + 0.75 * pr.gamma * a1**2 - omega * omega
    return a1 * a1 * detune * detune + 4.0 * omega * omega * pr.zeta**2 * a1 * a1 - pr.f_amp**2


def theta_of(pr: Params, omega: float, a0: float, a1: float) -> float:
    """Phase lag in (-pi, 0]; sin(theta) <= 0 because damping is positive.

    atan2 of (F*sin(theta), F*cos(theta)) read off the two balance
    equations; the boundary value +pi maps to -pi per the range
    convention.
    """
    if pr.f_amp <= 0 or a1 <= 0:
        raise ValueError("theta_of requires f_amp > 0 and a1 > 0")
    sin_part = -2.0 * pr.zeta * a1 * omega
    cos_part = a1 * (-(omega * omega) + 3.0 * pr.gamma * a0**2 + 0.75 * pr.gamma * a1**2)
    theta = math.atan2(sin_part, cos_part)
    if theta > 0.0:  # atan2(-0.0 rounded to +0.0, negative) gives +pi
        theta -= 2.0 * math.pi
    return theta


def balance_residuals(pr: Params, omega: float, a0: float, a1: float, theta: float):
    """Residuals of the three steady-state balance equations."""
    r_harm_cos = (
        -a1 * omega * omega
        + 3.0 * pr.gamma * a0**2 * a1
        + 0.75 * pr.gamma * a1**3
        - pr.f_amp * math.cos(theta)
    )
    r_harm_sin = -2.0 * pr.zeta * a1 * omega - pr.f_amp * math.sin(theta)
    r_bias = pr.gamma * a0**3 + 1.5 * pr.gamma * a0 * a1 * a1 - pr.f0
    return r_harm_cos, r_harm_sin, r_bias


def steady_state(pr: Params, omega: float, a0: float) -> SteadyState | None:
    """Complete a root of f into a full steady state, or None if the
    amplitude radicand is negative."""
    a1 = a1_from_a0(pr, a0)
    if a1 is None:
        return None
    if a1 > 0 and pr.f_amp > 0:
        theta = theta_of(pr, omega, a0, a1)
    else:
        theta = 0.0
    return SteadyState(omega=omega, a0=a0, a1=a1, theta=theta)


@dataclass(frozen=True)
class CurveSample:
    omega: float
    branch: int
    a0: float
    a1: float
    theta: float


@dataclass(frozen=True)
class ResponseCurve:
    params: Params
    samples: tuple


# continuation: a root may move at most this many times the motion seen on
# the previous step before it is treated as a different branch
_JUMP_REJECT = 5.0
_FALLBACK_MOTION = 0.02


def response_curve(
    pr: Params,
    omega_range,
    n_samples: int,
    include_negative_a0: bool = False,
    threads: int | None = None,
) -> ResponseCurve:
    """Trace every solution branch of the response over a frequency range.

    At each sampled frequency the real roots in A0 of the implicit
    polynomial are computed (positive roots only unless
    ``include_negative_a0``), completed with amplitude and phase, and
    grouped into branches by nearest-neighbor continuation in A0.
    Unmatched roots open new branches, so disconnected curve components
    keep distinct branch ids.
    """
    lo, hi = float(omega_range[0]), float(omega_range[1])
    if not (0 < lo <= hi) or not math.isfinite(hi):
        raise ValueError("omega_range must lie inside (0, inf)")
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    omegas = [lo + (hi - lo) * i / (n_samples - 1) for i in range(n_samples)]
    domain = (-math.inf, math.inf) if include_negative_a0 else (0.0, math.inf)

    def states_at(omega):
        states = []
        for root in real_roots(build_f_poly(pr, omega), domain=domain):
            if root == 0.0:
                continue
            st = steady_state(pr, omega, root)
            if st is not None:
                states.append(st)
        return states

    per_omega = parallel_map(states_at, omegas, threads)

    samples = []
    next_id = 0
    active = []  # [branch id, last a0, last motion or None]
    for omega, states in zip(omegas, per_omega):
        states = sorted(states, key=lambda s: s.a0)
        pairs = sorted(
            (abs(st.a0 - br[1]), bi, si)
            for bi, br in enumerate(active)
            for si, st in enumerate(states)
        )
        branch_of = {}
        used_branches = set()
        for dist, bi, si in pairs:
            if si in branch_of or bi in used_branches:
                continue
            br = active[bi]
            motion = br[2] if br[2] is not None else _FALLBACK_MOTION * (1.0 + abs(br[1]))
            if dist > _JUMP_REJECT * max(motion, 1e-12):
                continue
            branch_of[si] = bi
            used_branches.add(bi)
        new_active = []
        for si, st in enumerate(states):
            bi = branch_of.get(si)
            if bi is None:
                bid = next_id
                next_id += 1
                new_active.append([bid, st.a0, None])
            else:
                br = active[bi]
                bid = br[0]
                new_active.append([bid, st.a0, abs(st.a0 - br[1])])
            samples.append(
                CurveSample(omega=omega, branch=bid, a0=st.a0, a1=st.a1, theta=st.theta)
            )
        active = new_active

    samples.sort(key=lambda s: (s.omega, s.branch))
    return ResponseCurve(params=pr, samples=tuple(samples))


# -- serialization -------------------------------------------------------


def _fmt(x: float) -> str:
    return format(x, ".15g")


def curve_csv(curve: ResponseCurve) -> str:
    lines = ["omega,branch,a0,a1,theta"]
    for s in curve.samples:
        lines.append(
            f"{_fmt(s.omega)},{s.branch},{_fmt(s.a0)},{_fmt(s.a1)},{_fmt(s.theta)}"
        )
    return "\n".join(lines) + "\n"


def curve_json(curve: ResponseCurve) -> str:
    doc = {
        "params": {
            "gamma": curve.params.gamma,
            "zeta": curve.params.zeta,
            "f": curve.params.f_amp,
            "f0": curve.params.f0,
        },
        "samples": [
            {
                "omega": s.omega,
                "branch": s.branch,
                "a0": s.a0,
                "a1": s.a1,
                "theta": s.theta,
            }
            for s in curve.samples
        ],
    }
    return json.dumps(doc, indent=1)
