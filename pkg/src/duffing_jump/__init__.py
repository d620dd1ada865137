"""Jump analysis for the forced single-well cubic oscillator.

The oscillator is

    y'' + 2*zeta*y' + gamma*y**3 = f0 + f_amp*cos(omega*t)

and everything in this package revolves around its one-harmonic steady
state y(t) = A0 + A1*cos(omega*t + theta).  The subpackages split the
work as follows:

- ``algebra``  exact rational polynomial kernel; derives the implicit
  response polynomial in A0 and the degree-21 fold (jump) polynomial
  instead of hard-coding their coefficients
- ``poly``     numeric univariate polynomial engine (Aberth-Ehrlich roots)
- ``steady``   steady-state maps and amplitude-frequency response curves
- ``singular`` singular-point conditions and the no-singular-point scan
- ``jump``     vertical tangencies, jump manifold slices, border sets
- ``sim``      direct time integration and hysteresis frequency sweeps
- ``cli``      command line front end emitting plot-ready CSV/JSON
"""

from duffing_jump.steady import Params

__all__ = ["Params"]
__version__ = "0.1.0"
