"""Numerical laboratory for zeta-regularized spectral ladders.

Subpackages cover regularized determinants and local Euler factors,
critical-line zero finding, explicit-formula checks over number fields,
trace distributions of suspension flows, the cohomological equation on
irrational torus foliations, and fixed-point counts for automorphisms
of place sets.  The ``zrl`` console script exposes the same machinery.
"""

__version__ = "0.1.0"

__all__ = ["__version__"]
