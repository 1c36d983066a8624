"""Parametric picture: modulating the mirror capacitance of a lumped LC mode
at twice its frequency is a squeezing interaction, and the photon growth from
vacuum follows sinh^2(2*lambda*t). A truncated number-basis evolution serves
as the independent check of that closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConfigError, RwaViolationError, ValidityError

RK4_STEP_BOUND = 5e-4  # dimensionless step 2*lambda*h per integrator step
TRUNCATION_POPULATION_BOUND = 1e-8  # top-two-level population above which truncation is flagged


@dataclass(frozen=True)
class LcParams:
    """Lumped LC mode with a mechanically modulated mirror capacitance.

    cap_cavity and cap_mirror add to the total capacitance C_T; the mirror
    plate sits at gap and oscillates with amplitude delta_x at omega_m.
    """

    inductance: float
    cap_cavity: float
    cap_mirror: float
    gap: float
    delta_x: float
    omega_m: float

    def __post_init__(self):
        for name in ("inductance", "cap_cavity", "cap_mirror", "gap", "omega_m"):
            if not getattr(self, name) > 0.0:
                raise ConfigError(f"lc.{name} must be strictly positive")
        if self.delta_x < 0.0:
            raise ConfigError("lc.delta_x must be non-negative")
        if self.delta_x >= self.gap / 100.0:
            raise ValidityError("lc.delta_x must stay below gap/100 for the series expansion")

    @property
    def cap_total(self) -> float:
        return self.cap_cavity + self.cap_mirror

    @property
    def omega_lc(self) -> float:
        """Mode frequency 1/sqrt(L*C_T) [rad/s]."""
        return 1.0 / math.sqrt(self.inductance * self.cap_total)


class EvolutionResult(NamedTuple):
    mean_photons: float
    norm_defect: float
    truncation_flag: bool
    odd_population: float


def inverse_capacitance_series(p: LcParams, t) -> tuple:
    """First-order expansion of 1/C_T(t) and the exact value for error reporting.

    series: 1/C_T + (cap_mirror*delta_x/(C_T^2*gap)) * cos(omega_m*t)
    exact:  1/(cap_cavity + cap_mirror*(1 - (delta_x/gap)*cos(omega_m*t)))
    """
    c = np.cos(p.omega_m * np.asarray(t, dtype=float))
    series = 1.0 / p.cap_total + (p.cap_mirror * p.delta_x / (p.cap_total**2 * p.gap)) * c
    exact = 1.0 / (p.cap_cavity + p.cap_mirror * (1.0 - (p.delta_x / p.gap) * c))
    if np.ndim(t) == 0:
        return float(series), float(exact)
    return series, exact


def squeeze_coupling(p: LcParams) -> float:
    """Squeezing rate lambda = (omega/8) * (cap_mirror*delta_x/(C_T*gap)) [rad/s].

    Requires the two-photon resonance omega_m = 2*omega_lc to 1e-6 relative;
    off-resonant modulation is outside this simplified picture.
    """
    two_omega = 2.0 * p.omega_lc
    if abs(p.omega_m - two_omega) > 1e-6 * two_omega:
        raise RwaViolationError(
            f"omega_m = {p.omega_m:.9e} violates the two-photon resonance 2*omega_lc = {two_omega:.9e}"
        )
    return (p.omega_lc / 8.0) * (p.cap_mirror * p.delta_x / (p.cap_total * p.gap))


def analytic_photon_number(lam: float, t: float) -> float:
    """Mean photons grown from vacuum: sinh^2(2*lambda*t)."""
    if t < 0.0:
        raise ConfigError("t must be non-negative")
    return math.sinh(2.0 * lam * t) ** 2


def pair_creation_matrix(dim: int) -> np.ndarray:
    """Number-basis matrix of (a^dag)^2 + a^2: entries sqrt((n+1)(n+2)) two off the diagonal."""
    if dim < 2:
        raise ConfigError("dim must be at least 2")
    h = np.zeros((dim, dim))
    n = np.arange(dim - 2)
    off = np.sqrt((n + 1.0) * (n + 2.0))
    h[n, n + 2] = off
    h[n + 2, n] = off
    return h


def _observe(psi: np.ndarray) -> EvolutionResult:
    pops = np.abs(psi) ** 2
    mean = float(np.sum(np.arange(len(psi)) * pops))
    defect = float(1.0 - math.fsum(pops))
    top_two = float(pops[-1] + pops[-2])
    odd = float(np.sum(pops[1::2]))
    return EvolutionResult(mean, defect, top_two > TRUNCATION_POPULATION_BOUND, odd)


def _rk4_advance(psi: np.ndarray, h_mat: np.ndarray, lam: float, duration: float, steps: int) -> np.ndarray:
    # classic fixed-step rk4 on dpsi/dt = -i*lambda*H psi
    dt = duration / steps
    m = -1j * lam * h_mat
    for _ in range(steps):
        k1 = m @ psi
        k2 = m @ (psi + 0.5 * dt * k1)
        k3 = m @ (psi + 0.5 * dt * k2)
        k4 = m @ (psi + dt * k3)
        psi = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return psi


def _step_count(lam: float, duration: float) -> int:
    return max(1, math.ceil(2.0 * lam * duration / RK4_STEP_BOUND))


def evolve_truncated(lam: float, t: float, dim: int = 60) -> EvolutionResult:
    """Evolve vacuum under the pair-creation generator for time t in a dim-level basis.

    Fixed-step 4th-order integration with dimensionless step 2*lambda*h below
    5e-4. Valid for dim >= 16 and 2*lambda*t <= 2; population reaching the top
    two levels beyond 1e-8 sets the truncation flag.
    """
    if dim < 16:
        raise ConfigError("dim must be >= 16")
    if lam < 0.0 or t < 0.0:
        raise ConfigError("lam and t must be non-negative")
    if 2.0 * lam * t > 2.0:
        raise ValidityError("2*lambda*t must stay <= 2 for the truncated evolution")
    psi = np.zeros(dim, dtype=complex)
    psi[0] = 1.0
    if lam == 0.0 or t == 0.0:
        return _observe(psi)
    psi = _rk4_advance(psi, pair_creation_matrix(dim), lam, t, _step_count(lam, t))
    return _observe(psi)


def evolve_series(lam: float, times, dim: int = 60) -> list[EvolutionResult]:
    """One trajectory observed at the given increasing times (starting at or after 0)."""
    ts = np.asarray(times, dtype=float)
    if np.any(ts < 0.0) or np.any(np.diff(ts) <= 0.0):
        raise ConfigError("times must be non-negative and strictly increasing")
    if dim < 16:
        raise ConfigError("dim must be >= 16")
    if len(ts) and 2.0 * lam * ts[-1] > 2.0:
        raise ValidityError("2*lambda*t must stay <= 2 for the truncated evolution")
    h_mat = pair_creation_matrix(dim)
    psi = np.zeros(dim, dtype=complex)
    psi[0] = 1.0
    results = []
    previous = 0.0
    for t in ts:
        duration = t - previous
        if duration > 0.0 and lam > 0.0:
            psi = _rk4_advance(psi, h_mat, lam, duration, _step_count(lam, duration))
        previous = t
        results.append(_observe(psi))
    return results
