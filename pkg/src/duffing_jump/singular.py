"""Singular-point analysis of the implicit response equation.

A singular point would need f, df/domega and df/dA0 to vanish together.
The omega-derivative factorizes completely, its only non-trivial branch
pins the constant force to a closed form, and substituting that back
reduces the remaining two conditions to a quartic in X = omega^2 whose
real positive roots would mark singular points.  The scan below checks a
dense (zeta, c = gamma*F^2) grid and reports any positive root; the
expected outcome is none, which is what makes vertical tangencies the
only mechanism for multivaluedness changes in this oscillator.

Note on damping symbols: the factored omega-derivative is stated with a
delta^2 term in some sources; delta is the same damping ratio called zeta
everywhere else, and this module treats it as a pure alias.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from duffing_jump.poly import RealPoly, real_roots
from duffing_jump.steady import Params
from duffing_jump.util import parallel_map


def df_domega_factored(pr: Params, omega: float, a0: float):
    """The four factors of df/domega: (8*A0, omega, f0 - gamma*A0^3,
    f0 + A0*(5*gamma*A0^2 - 4*zeta^2 - 2*omega^2)).

    Their product equals the analytic omega-derivative of the implicit
    response polynomial.
    """
    g, z, f0 = pr.gamma, pr.zeta, pr.f0
    return (
        8.0 * a0,
        omega,
        f0 - g * a0**3,
        f0 + a0 * (5.0 * g * a0 * a0 - 4.0 * z * z - 2.0 * omega * omega),
    )


def f0_branch(pr: Params, omega: float, a0: float) -> float:
    """Constant force annihilating the non-trivial factor of df/domega."""
    return 2.0 * omega * omega * a0 + 4.0 * pr.zeta**2 * a0 - 5.0 * pr.gamma * a0**3


def singular_quartic(zeta: float, c: float) -> RealPoly:
    """Quartic in X = omega^2 whose positive roots would be singular points.

    c is the combination gamma*F^2.
    """
    if zeta <= 0:
        raise ValueError("zeta must be > 0")
    z2 = zeta * zeta
    z4 = z2 * z2
    z6 = z4 * z2
    z8 = z4 * z4
    z10 = z8 * z2
    z12 = z6 * z6
    return RealPoly(
        [
            512.0 * z12 - 240.0 * z6 * c + 45.0 * c * c,
            -336.0 * c * z4 + 1792.0 * z10,
            -96.0 * c * z2 + 2304.0 * z8,
            1280.0 * z6,
            256.0 * z4,
        ]
    )


@dataclass(frozen=True)
class SingularCondition:
    """Bundled quartic condition at one (zeta, c) point."""

    zeta: float
    c: float
    quartic: RealPoly

    @staticmethod
    def build(zeta: float, c: float) -> "SingularCondition":
        return SingularCondition(zeta=zeta, c=c, quartic=singular_quartic(zeta, c))


def a0sq_expression(zeta: float, gamma: float, f_amp: float, x: float) -> float:
    """A0^2 on the singular branch as a function of X = omega^2.

    A0^2 = 45*F^2*gamma^2 * (16*zeta^2*X^3 + 64*zeta^4*X^2
           + (9*gamma*F^2 + 80*zeta^6)*X + 15*gamma*F^2*zeta^2 + 32*zeta^8)
    """
    if gamma <= 0 or f_amp <= 0:
        raise ValueError("gamma and f_amp must be > 0")
    z2 = zeta * zeta
    z4 = z2 * z2
    z6 = z4 * z2
    z8 = z4 * z4
    gf2 = gamma * f_amp * f_amp
    rhs = (
        16.0 * z2 * x**3
        + 64.0 * z4 * x * x
        + (9.0 * gf2 + 80.0 * z6) * x
        + 15.0 * gf2 * z2
        + 32.0 * z8
    )
    return 45.0 * f_amp**2 * gamma**2 * rhs


def _descartes_positive_bound(coeffs) -> int:
    """Number of sign changes in the coefficient list (ignoring zeros)."""
    signs = [c > 0 for c in coeffs if c != 0.0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclass
class ScanReport:
    zeta_range: tuple
    c_range: tuple
    grid: tuple
    checked: int = 0
    violations: list = field(default_factory=list)  # (zeta, c, x) triples

    @property
    def clean(self) -> bool:
        return not self.violations


def scan_no_singular(
    zeta_range=(0.005, 0.5),
    c_range=(1e-6, 10.0),
    grid=(200, 200),
    threads: int | None = None,
) -> ScanReport:
    """Scan a (zeta, c) grid for positive roots of the singular quartic.

    Descartes' rule prunes grid points whose coefficient signs already
    forbid positive roots; the rest go through the root finder.  Any
    positive root is recorded as a violation with its location.
    """
    zlo, zhi = zeta_range
    clo, chi = c_range
    if zlo <= 0 or clo < 0:
        raise ValueError("ranges must be positive")
    nz, nc = grid
    zetas = [zlo + (zhi - zlo) * i / max(nz - 1, 1) for i in range(nz)]
    cs = [clo + (chi - clo) * j / max(nc - 1, 1) for j in range(nc)]
    report = ScanReport(zeta_range=tuple(zeta_range), c_range=tuple(c_range), grid=tuple(grid))

    def row(zeta):
        hits = []
        for c in cs:
            q = singular_quartic(zeta, c)
            if _descartes_positive_bound(q.coeffs) == 0:
                continue
            for x in real_roots(q, domain=(0.0, math.inf)):
                hits.append((zeta, c, x))
        return hits

    for hits in parallel_map(row, zetas, threads):
        report.violations.extend(hits)
    report.checked = nz * nc
    return report
