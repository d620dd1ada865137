"""Vertical tangencies, the jump manifold, border sets, double frequencies.

A jump happens where the response curve has a vertical tangency: the
implicit polynomial f(omega, A0) and its A0-derivative vanish together.
Eliminating omega^2 from that pair yields a single degree-21 polynomial
J(A0) in the bias amplitude whose coefficients depend only on the four
oscillator parameters (derived exactly in :mod:`duffing_jump.algebra`),
plus a closed form giving omega^2 back from each root.  Everything in
this module is bookkeeping around the real positive roots of J:

- ``jump_points``       the tangencies themselves at fixed parameters
- ``manifold_slice_*``  the root set swept over one or two parameters
- ``border_set``        parameter values where J acquires a double root,
                        i.e. where the number of tangencies changes
- ``double_omega_points``  parameter values where two distinct
                        tangencies share one frequency
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from duffing_jump import algebra
from duffing_jump.poly import (
    RealPoly,
    all_roots,
    derivative,
    discriminant_from_roots,
    evaluate,
    real_roots,
)
from duffing_jump.steady import Params, a1_from_a0, a1_radicand, build_f_poly
from duffing_jump.steady import RADICAND_TOL
from duffing_jump.util import parallel_map

log = logging.getLogger(__name__)

_POLE_REL_TOL = 1e-10


class PoleError(ValueError):
    """omega^2 closed form evaluated at an excluded root of its denominator."""


@dataclass(frozen=True)
class JumpPoint:
    omega: float
    a0: float
    a1: float


@dataclass(frozen=True)
class JumpManifoldSlice:
    """Zero set of J sampled over one or two free parameters.

    ``fixed`` maps the held-constant parameter names to values; points
    are (free..., a0) tuples.
    """

    fixed: dict
    grid: tuple
    points: tuple


@dataclass(frozen=True)
class BorderPoint:
    param: str
    value: float
    a0_double: float | None
    count_below: int | None
    count_above: int | None


@dataclass(frozen=True)
class DoubleOmegaEvent:
    f0: float
    omega: float
    a0_pair: tuple


_JUMP_TERMS = None


def _jump_terms():
    global _JUMP_TERMS
    if _JUMP_TERMS is None:
        idx = {s: i for i, s in enumerate(algebra.SYMBOLS)}
        order = [idx["gamma"], idx["zeta"], idx["F"], idx["F0"]]
        table = []
        for ak in algebra.jump_coefficients():
            table.append(
                [(float(c), tuple(e[i] for i in order)) for e, c in ak.terms.items()]
            )
        _JUMP_TERMS = table
    return _JUMP_TERMS


def build_jump_poly(pr: Params) -> RealPoly:
    """Degree-21 fold polynomial J(A0) at the given parameters."""
    vals = (pr.gamma, pr.zeta, pr.f_amp, pr.f0)
    coeffs = []
    for terms in _jump_terms():
        total = 0.0
        for c, exps in terms:
            t = c
            for v, e in zip(vals, exps):
                if e:
                    t *= v**e
            total += t
        coeffs.append(total)
    return RealPoly(coeffs)


def omega_sq_at(pr: Params, a0: float) -> float:
    """omega^2 pairing with a root A0 of the fold polynomial.

    Closed form with denominator 2*A0*(f0 - 10*gamma*A0^3)*(f0 -
    gamma*A0^3)^2; roots near a denominator factor are curve endpoints or
    degeneracies rather than jumps and raise PoleError.
    """
    g, f, f0 = pr.gamma, pr.f_amp, pr.f0
    a3 = a0**3
    scale = abs(f0) + abs(g * a3)
    for factor, name in (
        (a0, "A0 = 0"),
        (f0 - 10.0 * g * a3, "f0 - 10*gamma*A0^3 = 0"),
        (f0 - g * a3, "f0 - gamma*A0^3 = 0"),
    ):
        if abs(factor) <= _POLE_REL_TOL * max(scale, 1.0):
            raise PoleError(f"omega^2 pole at {name} (a0 = {a0})")
    num = (
        -50.0 * g**4 * a0**12
        + 95.0 * g**3 * f0 * a0**9
        + (6.0 * f * f * g * g - 39.0 * g * g * f0 * f0) * a0**6
        + (3.0 * f * f * g * f0 - 7.0 * g * f0**3) * a3
        + f0**4
    )
    den = 2.0 * a0 * (f0 - 10.0 * g * a3) * (f0 - g * a3) ** 2
    return num / den


def tangency_residuals(pr: Params, omega: float, a0: float):
    """Relative residuals of (f, df/dA0) at a candidate tangency."""
    p = build_f_poly(pr, omega)
    dp = derivative(p)
    out = []
    for q in (p, dp):
        scale = max(abs(c) * abs(a0) ** k for k, c in enumerate(q.coeffs))
        out.append(abs(evaluate(q, a0)) / scale if scale else abs(evaluate(q, a0)))
    return tuple(out)


def jump_points(pr: Params) -> list[JumpPoint]:
    """All vertical tangencies at fixed parameters, sorted by frequency.

    Real positive roots of J are completed with omega from the closed
    form and the amplitude from the constant-force balance; roots at
    denominator poles, with non-positive omega^2, or with a negative
    amplitude radicand are not tangencies of the physical branch.
    """
    points = []
    for a0 in positive_fold_roots(pr):
        try:
            osq = omega_sq_at(pr, a0)
        except PoleError:
            continue
        if osq <= 0.0 or a1_radicand(pr, a0) < RADICAND_TOL:
            continue
        a1 = a1_from_a0(pr, a0)
        if a1 is None:
            continue
        points.append(JumpPoint(omega=math.sqrt(osq), a0=a0, a1=a1))
    points.sort(key=lambda p: p.omega)
    return points


def positive_fold_roots(pr: Params) -> list[float]:
    """Real positive roots of the fold polynomial J."""
    return real_roots(build_jump_poly(pr), domain=(0.0, math.inf))


def count_solutions(pr: Params, omega: float) -> int:
    """Number of positive real roots of the response polynomial at omega."""
    if not omega > 0:
        raise ValueError("omega must be positive")
    return len(real_roots(build_f_poly(pr, omega), domain=(0.0, math.inf)))


def manifold_slice_2d(
    gamma: float,
    zeta: float,
    f_amp: float,
    f0_range,
    n: int,
    threads: int | None = None,
) -> JumpManifoldSlice:
    """Fold-manifold slice over the constant force: (f0, a0) points."""
    if n < 2:
        raise ValueError("n must be >= 2")
    lo, hi = f0_range
    f0s = [lo + (hi - lo) * i / (n - 1) for i in range(n)]

    def column(f0):
        pr = Params(gamma=gamma, zeta=zeta, f_amp=f_amp, f0=f0)
        return [(f0, a0) for a0 in positive_fold_roots(pr)]

    points = []
    for col in parallel_map(column, f0s, threads):
        points.extend(col)
    return JumpManifoldSlice(
        fixed={"gamma": gamma, "zeta": zeta, "f": f_amp},
        grid=(n,),
        points=tuple(points),
    )


def manifold_slice_3d(
    gamma: float,
    zeta: float,
    f_range,
    f0_range,
    grid,
    threads: int | None = None,
) -> JumpManifoldSlice:
    """Fold-manifold surface over (F, F0): (f, f0, a0) points."""
    nf, nf0 = grid
    if nf < 2 or nf0 < 2:
        raise ValueError("grid dimensions must be >= 2")
    flo, fhi = f_range
    f0lo, f0hi = f0_range
    fs = [flo + (fhi - flo) * i / (nf - 1) for i in range(nf)]
    f0s = [f0lo + (f0hi - f0lo) * j / (nf0 - 1) for j in range(nf0)]

    def column(f):
        col = []
        for f0 in f0s:
            pr = Params(gamma=gamma, zeta=zeta, f_amp=f, f0=f0)
            col.extend((f, f0, a0) for a0 in positive_fold_roots(pr))
        return col

    points = []
    for col in parallel_map(column, fs, threads):
        points.extend(col)
    return JumpManifoldSlice(
        fixed={"gamma": gamma, "zeta": zeta},
        grid=(nf, nf0),
        points=tuple(points),
    )


# -- border sets ---------------------------------------------------------


def _fold_discriminant(pr: Params) -> float:
    p = build_jump_poly(pr)
    return discriminant_from_roots(p, all_roots(p))


def _sign(x: float) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def _double_root_location(pr: Params) -> float | None:
    """Nearest-pair midpoint among positive roots of J (the coalescing
    root when evaluated at a border value)."""
    roots = positive_fold_roots(pr)
    rs = all_roots(build_jump_poly(pr))
    # at the border the double root may already have left the real axis;
    # look at the full root set for the tightest conjugate/real pair near
    # the positive axis
    best = None
    candidates = [r for r in rs.roots if r.real > 0 and abs(r.imag) < 0.05 * (1 + r.real)]
    for i in range(len(candidates)):
        for j in range(i + 1, len(candidates)):
            gap = abs(candidates[i] - candidates[j])
            if best is None or gap < best[0]:
                best = (gap, 0.5 * (candidates[i].real + candidates[j].real))
    if best is not None:
        return best[1]
    if roots:
        return roots[0]
    return None


def _resultant_sign_check(pr: Params, disc_sign: int) -> None:
    """Cross-check: the numeric Sylvester determinant of (J, J') must
    agree with the root-product discriminant up to the fixed conversion
    disc = resultant / lead (degree 21 makes (-1)^(n(n-1)/2) = +1)."""
    p = build_jump_poly(pr)
    dp = derivative(p)
    try:
        sign, _logmag = algebra.sylvester_det_logsign(p.coeffs, dp.coeffs)
    except (ValueError, OverflowError) as exc:
        log.warning("Sylvester cross-check unavailable: %s", exc)
        return
    lead_sign = _sign(p.coeffs[-1])
    if sign and disc_sign and sign * lead_sign != disc_sign:
        log.warning(
            "Sylvester determinant sign disagrees with the discriminant "
            "(params %s); keeping the root-tracking result", pr
        )


class BorderBracketError(RuntimeError):
    """Discriminant sign would not settle inside a bracketing interval."""

    def __init__(self, param, interval):
        super().__init__(f"unresolved border bracket for {param} in {interval}")
        self.param = param
        self.interval = interval


_PARAM_FIELDS = {"gamma": "gamma", "zeta": "zeta", "f": "f_amp", "f0": "f0"}


def border_set(
    base: Params,
    vary: str,
    value_range,
    grid_n: int = 400,
    history: list | None = None,
) -> list[BorderPoint]:
    """Parameter values where the fold polynomial has a double positive root.

    Root tracking drives the search: the positive-root count of J is
    sampled on a grid over the varied parameter, every count change is
    bracketed, and each bracket is bisected on the sign of the
    discriminant (computed from the root set).  The ill-conditioned 41x41
    Sylvester determinant only cross-checks the discriminant sign at the
    bracket ends.  A range touching 0 additionally reports the value 0 as
    a degenerate boundary point without a double-root certificate.

    ``history``, when given, collects (value, discriminant) pairs from
    the bisections for diagnostic use.
    """
    if vary not in _PARAM_FIELDS:
        raise ValueError(f"vary must be one of {sorted(_PARAM_FIELDS)}")
    field = _PARAM_FIELDS[vary]
    lo, hi = float(value_range[0]), float(value_range[1])
    if not (hi > lo >= 0.0) or not math.isfinite(hi):
        raise ValueError("range must be positive and finite")
    include_zero_boundary = lo <= 0.0
    start = lo if lo > 0.0 else (hi - lo) / grid_n * 1e-3

    def at(value):
        return base.with_value(field, value)

    xs = [start + (hi - start) * i / (grid_n - 1) for i in range(grid_n)]
    counts = [len(jump_points(at(x))) for x in xs]

    def disc(value):
        d = _fold_discriminant(at(value))
        if history is not None:
            history.append((value, d))
        return d

    points = []
    if include_zero_boundary:
        points.append(
            BorderPoint(
                param=vary,
                value=0.0,
                a0_double=None,
                count_below=None,
                count_above=counts[0],
            )
        )

    for i in range(grid_n - 1):
        if counts[i] == counts[i + 1]:
            continue
        a, b = xs[i], xs[i + 1]
        sa, sb = _sign(disc(a)), _sign(disc(b))
        use_disc = sa != 0 and sb != 0 and sa != sb
        ca = counts[i]
        for _ in range(80):
            mid = 0.5 * (a + b)
            if b - a <= 1e-12 * max(1.0, abs(mid)):
                break
            if use_disc:
                sm = _sign(disc(mid))
                if sm == 0:
                    a = b = mid
                    break
                if sm == sa:
                    a = mid
                else:
                    b = mid
            else:
                cm = len(jump_points(at(mid)))
                if cm == ca:
                    a = mid
                else:
                    b = mid
        else:
            raise BorderBracketError(vary, (a, b))
        value = 0.5 * (a + b)
        _resultant_sign_check(at(xs[i]), _sign(disc(xs[i])))
        _resultant_sign_check(at(xs[i + 1]), _sign(disc(xs[i + 1])))
        points.append(
            BorderPoint(
                param=vary,
                value=value,
                a0_double=_double_root_location(at(value)),
                count_below=counts[i],
                count_above=counts[i + 1],
            )
        )
    return points


# -- double frequencies ----------------------------------------------------


def _signed_min_gap(pr: Params):
    """Signed frequency gap of the closest tangency pair, ordered by a0.

    Returns (gap, pair) or None with fewer than two tangencies.  The sign
    flips when two tangency branches pass through each other in omega.
    """
    pts = jump_points(pr)
    if len(pts) < 2:
        return None
    best = None
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            gap = abs(pts[i].omega - pts[j].omega)
            if best is None or gap < best[0]:
                pair = sorted((pts[i], pts[j]), key=lambda p: p.a0)
                best = (gap, pair)
    gap, pair = best
    return pair[0].omega - pair[1].omega, pair


def double_omega_points(
    gamma: float,
    zeta: float,
    f_amp: float,
    f0_range,
    n: int = 240,
) -> list[DoubleOmegaEvent]:
    """Constant-force values at which two tangencies share a frequency.

    The signed gap of the closest tangency pair crosses zero smoothly as
    the branches pass through each other; grid sign changes are bisected
    and a candidate is accepted only if the gap actually collapses (sign
    flips from pair identity switches do not).
    """
    lo, hi = f0_range
    if not (0 < lo < hi):
        raise ValueError("f0_range must be positive")
    xs = [lo + (hi - lo) * i / (n - 1) for i in range(n)]

    def at(f0):
        return Params(gamma=gamma, zeta=zeta, f_amp=f_amp, f0=f0)

    gaps = [_signed_min_gap(at(x)) for x in xs]
    events = []
    for i in range(n - 1):
        ga, gb = gaps[i], gaps[i + 1]
        if ga is None or gb is None:
            continue
        sa, sb = _sign(ga[0]), _sign(gb[0])
        if sa == 0:
            sa = 1
        if sb == 0:
            sb = 1
        if sa == sb:
            continue
        a, b = xs[i], xs[i + 1]
        for _ in range(80):
            mid = 0.5 * (a + b)
            if b - a <= 1e-13 * max(1.0, abs(mid)):
                break
            gm = _signed_min_gap(at(mid))
            if gm is None:
                break
            if _sign(gm[0]) == sa or gm[0] == 0.0:
                a = mid
            else:
                b = mid
        f0_star = 0.5 * (a + b)
        result = _signed_min_gap(at(f0_star))
        if result is None:
            continue
        gap, pair = result
        omega = 0.5 * (pair[0].omega + pair[1].omega)
        if abs(gap) > 1e-6 * (1.0 + omega):
            continue  # pair identity switch, not a true crossing
        events.append(
            DoubleOmegaEvent(
                f0=f0_star,
                omega=omega,
                a0_pair=(pair[0].a0, pair[1].a0),
            )
        )
    return events
