"""Entanglement dynamics of two two-level atoms in a common lossy cavity.

Exact Laplace-transform solution of the one-excitation amplitude equations
with a Lorentzian (non-Markovian) bath, two independent numerical oracles
(Volterra product integration and a pseudomode RK4 integrator), and
Zeno/anti-Zeno decay-rate analysis.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
