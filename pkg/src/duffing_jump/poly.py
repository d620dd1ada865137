"""Numeric univariate polynomial engine.

Dense real-coefficient polynomials with evaluation, derivative, and a
simultaneous-iteration (Aberth-Ehrlich) root finder.  The fold polynomial
this package cares about has degree 21 with coefficients spanning ~15
orders of magnitude, so the root finder balances coefficients by a
geometric rescaling x -> s*x before iterating and polishes with Newton
steps afterwards.  No linear-algebra dependency is involved; the hot loop
is a numba kernel.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from numba import njit

MAX_ITERATIONS = 200
STEP_TOL = 1e-13
DEFAULT_IMAG_TOL = 1e-7
_DEDUP_SPACING = 1e-9
_CLUSTER_REL = 1e-5


class RootConvergenceError(RuntimeError):
    """Aberth iteration hit its iteration cap; best-so-far attached."""

    def __init__(self, message, roots, residuals):
        super().__init__(message)
        self.roots = roots
        self.residuals = residuals


@dataclass(frozen=True)
class RealPoly:
    """Dense univariate polynomial, coefficients ascending in degree.

    Trailing zero coefficients are trimmed at construction; the zero
    polynomial is stored as a single 0.0 coefficient.
    """

    coeffs: tuple

    def __init__(self, coeffs):
        c = [float(v) for v in coeffs]
        if not c:
            c = [0.0]
        while len(c) > 1 and c[-1] == 0.0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0.0,)

    def __call__(self, x):
        return evaluate(self, x)


def evaluate(p: RealPoly, x):
    """Horner evaluation; accepts real or complex arguments."""
    acc = 0.0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def derivative(p: RealPoly) -> RealPoly:
    if p.degree == 0:
        return RealPoly([0.0])
    return RealPoly([k * c for k, c in enumerate(p.coeffs)][1:])


def integral(p: RealPoly, constant: float = 0.0) -> RealPoly:
    return RealPoly([constant] + [c / (k + 1) for k, c in enumerate(p.coeffs)])


@dataclass(frozen=True)
class RootSet:
    """All complex roots of a polynomial, with cluster-size estimates.

    ``roots`` has one entry per root counted with multiplicity;
    ``multiplicities[i]`` is the size of the cluster root i belongs to;
    ``residuals[i]`` is |p(root_i)|.
    """

    roots: tuple
    multiplicities: tuple
    residuals: tuple


@njit(cache=True, nogil=True)
def _aberth_kernel(coeffs, max_iter, step_tol):  # pragma: no cover - jitted
    n = coeffs.shape[0] - 1
    dcoeffs = np.empty(n, dtype=np.complex128)
    for k in range(1, n + 1):
        dcoeffs[k - 1] = k * coeffs[k]

    # Fujiwara-style radius bound for the initial circle
    lead = abs(coeffs[n])
    radius = 0.0
    for i in range(n):
        if coeffs[i] != 0:
            r = (abs(coeffs[i]) / lead) ** (1.0 / (n - i))
            if r > radius:
                radius = r
    radius = 2.0 * radius if radius > 0.0 else 1.0

    roots = np.empty(n, dtype=np.complex128)
    for k in range(n):
        ang = 2.0 * math.pi * k / n + 0.7 / n + 0.45
        roots[k] = radius * complex(math.cos(ang), math.sin(ang))

    done = np.zeros(n, dtype=np.bool_)
    eps = 2.220446049250313e-16
    iterations = 0
    for it in range(max_iter):
        iterations = it + 1
        all_done = True
        for i in range(n):
            if done[i]:
                continue
            x = roots[i]
            p = coeffs[n]
            dp = dcoeffs[n - 1]
            scale = abs(coeffs[n])
            ax = abs(x)
            for k in range(n - 1, -1, -1):
                p = p * x + coeffs[k]
                scale = scale * ax + abs(coeffs[k])
                if k >= 1:
                    dp = dp * x + dcoeffs[k - 1]
            if abs(p) <= 4.0 * eps * scale:
                done[i] = True
                continue
            s = complex(0.0, 0.0)
            for j in range(n):
                if j != i:
                    diff = x - roots[j]
                    if diff == 0:
                        diff = complex(1e-14 * (1.0 + ax), 1e-14)
                    s += 1.0 / diff
            w = dp - p * s
            if w == 0:
                delta = p / (abs(p) + 1e-300)
            else:
                delta = p / w
            roots[i] = x - delta
            if abs(delta) <= step_tol * (abs(roots[i]) + 1e-300):
                done[i] = True
            else:
                all_done = False
        if all_done:
            break
    return roots, iterations


@njit(cache=True, nogil=True)
def _polish_kernel(coeffs, roots, steps):  # pragma: no cover - jitted
    n = coeffs.shape[0] - 1
    residuals = np.empty(roots.shape[0], dtype=np.float64)
    scales = np.empty(roots.shape[0], dtype=np.float64)
    for i in range(roots.shape[0]):
        x = roots[i]
        best = x
        pbest = 1e308
        for _ in range(steps):
            p = coeffs[n]
            dp = n * coeffs[n]
            for k in range(n - 1, 0, -1):
                p = p * x + coeffs[k]
                dp = dp * x + k * coeffs[k]
            p = p * x + coeffs[0]
            ap = abs(p)
            if ap < pbest:
                pbest = ap
                best = x
            if dp == 0 or ap == 0.0:
                break
            x = x - p / dp
        # final candidate may beat the recorded best
        p = coeffs[n]
        for k in range(n - 1, -1, -1):
            p = p * x + coeffs[k]
        if abs(p) < pbest:
            pbest = abs(p)
            best = x
        roots[i] = best
        residuals[i] = pbest
        # largest monomial magnitude at the root, the natural residual scale
        ax = abs(best)
        sc = 0.0
        m = 1.0
        for k in range(n + 1):
            v = abs(coeffs[k]) * m
            if v > sc:
                sc = v
            m *= ax
        scales[i] = sc
    return roots, residuals, scales


def _balance_scale(coeffs) -> float:
    """Geometric balancing x -> s*x minimizing the spread of |c_i * s^i|.

    In log space the spread is the gap between the upper and lower
    envelopes of the lines a_i + i*t, a convex piecewise-linear function
    of t = log(s) whose minimum sits at a crossing of two of the lines;
    checking every crossing finds the exact minimizer.
    """
    pts = [(i, math.log(abs(c))) for i, c in enumerate(coeffs) if c != 0.0]
    if len(pts) < 2:
        return 1.0

    def spread(t):
        hi = -math.inf
        lo = math.inf
        for i, a in pts:
            v = a + i * t
            if v > hi:
                hi = v
            if v < lo:
                lo = v
        return hi - lo

    best_t = 0.0
    best_v = spread(0.0)
    for k in range(len(pts)):
        i, ai = pts[k]
        for j, aj in pts[k + 1 :]:
            t = (ai - aj) / (j - i)
            v = spread(t)
            if v < best_v:
                best_v = v
                best_t = t
    return math.exp(best_t)


def all_roots(p: RealPoly) -> RootSet:
    """All complex roots via Aberth-Ehrlich iteration plus Newton polish.

    Deterministic: initial approximations sit on a fixed circle, so
    repeated calls give bitwise-identical results.  Raises ValueError for
    degree < 1 and RootConvergenceError when the iteration cap is hit
    (best-so-far roots attached to the exception).
    """
    if p.is_zero():
        raise ValueError("all_roots of the zero polynomial")
    n = p.degree
    if n < 1:
        raise ValueError("all_roots needs degree >= 1")

    coeffs = list(p.coeffs)
    # exact zero roots first: strip x^k so the iteration sees a nonzero
    # constant term (an 11-fold root at 0 would otherwise smear into a
    # machine-precision cluster of radius eps**(1/11))
    zero_mult = 0
    while coeffs[0] == 0.0 and len(coeffs) > 1:
        coeffs.pop(0)
        zero_mult += 1

    roots = []
    if len(coeffs) > 1:
        s = _balance_scale(coeffs)
        scaled = np.array(
            [complex(c * s**i) for i, c in enumerate(coeffs)], dtype=np.complex128
        )
        scaled /= np.max(np.abs(scaled))
        raw, iterations = _aberth_kernel(scaled, MAX_ITERATIONS, STEP_TOL)
        unscaled = raw * s
        orig = np.array([complex(c) for c in coeffs], dtype=np.complex128)
        polished, residuals, scale_at = _polish_kernel(orig, unscaled.copy(), 4)
        if iterations >= MAX_ITERATIONS:
            bad = [
                float(res)
                for res, sc in zip(residuals, scale_at)
                if res > 1e-10 * sc
            ]
            if bad:
                raise RootConvergenceError(
                    f"Aberth iteration did not converge in {MAX_ITERATIONS} steps",
                    tuple(complex(r) for r in polished),
                    tuple(float(r) for r in residuals),
                )
        roots = list(zip(polished.tolist(), residuals.tolist()))
    roots = [(0.0 + 0.0j, 0.0)] * zero_mult + roots

    values = [r for r, _ in roots]
    mults = _cluster_multiplicities(values)
    return RootSet(
        roots=tuple(values),
        multiplicities=tuple(mults),
        residuals=tuple(res for _, res in roots),
    )


def _cluster_multiplicities(values):
    """Greedy clustering with a relative radius; sizes are estimates only."""
    n = len(values)
    labels = [-1] * n
    centers = []
    for i, v in enumerate(values):
        for ci, c in enumerate(centers):
            if abs(v - c) <= _CLUSTER_REL * (1.0 + abs(c)):
                labels[i] = ci
                break
        else:
            labels[i] = len(centers)
            centers.append(v)
    counts = [0] * len(centers)
    for lb in labels:
        counts[lb] += 1
    return [counts[lb] for lb in labels]


def real_roots(p: RealPoly, imag_tol: float = DEFAULT_IMAG_TOL, domain=(-math.inf, math.inf)):
    """Real roots inside an open interval, deduplicated and ascending.

    Roots with |imag| < imag_tol * (1 + |real|) are projected onto the
    real axis; near-coincident values closer than 1e-9 collapse to one.
    The zero polynomial is rejected: a caller producing it has hit a
    degenerate parameter set and must know.
    """
    if p.is_zero():
        raise ValueError("real_roots of the zero polynomial (degenerate input)")
    if p.degree == 0:
        return []
    lo, hi = domain
    rs = all_roots(p)
    picked = sorted(
        r.real
        for r in rs.roots
        if abs(r.imag) < imag_tol * (1.0 + abs(r.real)) and lo < r.real < hi
    )
    out = []
    for v in picked:
        if not out or v - out[-1] > _DEDUP_SPACING:
            out.append(v)
    return out


def _conjugate_symmetrize(values):
    """Pair roots with their conjugates and enforce exact symmetry.

    The true root set of a real polynomial is conjugate-symmetric, but
    independently iterated approximations are only symmetric to round-off
    and phase errors accumulate over the O(n^2) pair products of the
    discriminant.  Each root is matched to its best conjugate partner
    (itself when nearly real) and the pair replaced by exact conjugates,
    which keeps the product real without disturbing whether a close pair
    counts as real-real or as a complex pair.
    """
    items = list(values)
    n = len(items)
    used = [False] * n
    out = []
    for i in range(n):
        if used[i]:
            continue
        used[i] = True
        best_j = i
        best_d = abs(items[i] - items[i].conjugate())
        for j in range(i + 1, n):
            if used[j]:
                continue
            d = abs(items[i] - items[j].conjugate())
            if d < best_d:
                best_d = d
                best_j = j
        if best_j == i:
            out.append(complex(items[i].real, 0.0))
        else:
            used[best_j] = True
            c = 0.5 * (items[i] + items[best_j].conjugate())
            out.append(c)
            out.append(c.conjugate())
    return out


def discriminant_from_roots(p: RealPoly, rs: RootSet) -> float:
    """lead^(2n-2) * prod_{i<j} (r_i - r_j)^2 from a computed root set.

    Accumulated with exponent tracking so degree-21 cases with tiny
    leading coefficients do not underflow prematurely; if the true value
    still leaves double range it is clamped to the nearest representable
    magnitude with the correct sign (callers only bracket on the sign).
    """
    n = p.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    lead = p.coeffs[-1]
    roots = _conjugate_symmetrize(rs.roots)
    prod = complex(1.0, 0.0)
    exp2 = 0
    for i in range(n):
        for j in range(i + 1, n):
            d = roots[i] - roots[j]
            prod *= d * d
            m = abs(prod)
            if m != 0.0 and (m > 1e150 or m < 1e-150):
                e = math.frexp(m)[1]
                prod = complex(math.ldexp(prod.real, -e), math.ldexp(prod.imag, -e))
                exp2 += e
    if prod == 0:
        return 0.0
    mag = abs(prod)
    if abs(prod.imag) > 1e-6 * mag:
        raise ValueError("discriminant has a non-negligible imaginary part")
    # lead^(2n-2) is positive (even power), so the sign comes from the product
    lead_log2 = (2 * n - 2) * math.log2(abs(lead))
    total_log2 = exp2 + math.log2(mag) + lead_log2
    sign = math.copysign(1.0, prod.real)
    if total_log2 > 1023.0:
        return sign * math.inf
    if total_log2 < -1073.0:
        return sign * 5e-324
    return sign * 2.0**total_log2


def discriminant_sign(p: RealPoly, rs: RootSet | None = None) -> int:
    """Sign of the discriminant; 0 only for an exactly repeated root."""
    if rs is None:
        rs = all_roots(p)
    d = discriminant_from_roots(p, rs)
    if d == 0.0:
        return 0
    return 1 if d > 0 else -1
