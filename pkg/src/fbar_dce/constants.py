"""Physical constants (SI, CODATA 2018) shared across the package."""

import math

HBAR = 1.054571817e-34  # reduced Planck constant [J s]
K_B = 1.380649e-23  # Boltzmann constant [J/K]
EPS0 = 8.8541878128e-12  # vacuum permittivity [F/m]
TWO_PI = 2.0 * math.pi
