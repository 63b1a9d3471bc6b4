"""Numerical tolerances and fixed constants shared by every module."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    norm: float = 1e-12
    hermitian: float = 1e-12
    trace: float = 1e-12
    # eigenvalues in [-eig_clamp, 0] are floating-point noise and clamp to 0
    eig_clamp: float = 1e-10
    unitary: float = 1e-12
    bisection_xtol: float = 1e-12


TOL = Tolerances()

# Coefficient of the quadratic log bound ln(x) > (x**2 - 1) / (2.5 x).
QUADRATIC_COEFF = 2.5
# Upper end of the interval (0, 0.305) on which that log bound is used.
QUADRATIC_VALIDITY_LIMIT = 0.305
# delta_z**2 - 2.5 delta_z + 2.5 a - 1 > 0 has a root in (0, 1) iff a > 1 / 2.5.
A_THRESHOLD = 1.0 / QUADRATIC_COEFF

# Table 1 only tabulates machines with xi up to this value.
XI_TABLE_CAP = 0.455
