"""Single-mirror scattering off a harmonically modulated terminating capacitance.

The modulated capacitance C(t) = c0 + delta_c*cos(omega_m*t), charged by the
AC drive, acts as a moving mirror for the transmission line. This module
computes the mirror's time-domain source term F(t) = d/dt[theta(t) C(t) V(t)],
its spectrum, and the bare inelastic coefficients that feed the cavity
dressing: the frequency-mixing amplitude s and the drive-sourced amplitude h.

Spectral conventions
--------------------
The turn-on transform (2*pi)^(-1/2) * Integral_0^T F(t) exp(i*omega*t) dt is
available in closed form for any finite window T (`windowed_source_transform`).
Its T -> infinity structure splits into coherent lines at the drive tones plus
a smooth steady part; `source_spectrum` returns that steady part (independent
of the window), and `line_weights` the integrated line strengths. Frequencies
within guard_band = 100/window_time of a tone are line-dominated and rejected
for continuous-part evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .constants import HBAR, TWO_PI
from .errors import ConfigError, GuardBandError
from .piezo import DriveParams

_SQRT_2PI = math.sqrt(TWO_PI)


@dataclass(frozen=True)
class TimeVaryingCap:
    """Harmonically modulated capacitance c0 + delta_c*cos(omega_m*t)."""

    c0: float
    delta_c: float
    omega_m: float

    def __post_init__(self):
        if not self.c0 > 0.0:
            raise ConfigError("cap.c0 must be strictly positive")
        if not 0.0 <= self.delta_c < self.c0:
            raise ConfigError("cap.delta_c must satisfy 0 <= delta_c < c0")
        if not self.omega_m > 0.0:
            raise ConfigError("cap.omega_m must be strictly positive")


@dataclass(frozen=True)
class LineParams:
    """Transmission-line parameters.

    cap_density and ind_density default to the values implied by z0 and
    v_light (cap_density = 1/(v_light*z0), ind_density = z0/v_light); when
    given explicitly they must reproduce z0 and v_light to 1e-9 relative.
    """

    z0: float
    v_light: float
    cap_density: float = field(default=0.0)
    ind_density: float = field(default=0.0)

    def __post_init__(self):
        if not (self.z0 > 0.0 and self.v_light > 0.0):
            raise ConfigError("line.z0 and line.v_light must be strictly positive")
        if self.cap_density == 0.0:
            object.__setattr__(self, "cap_density", 1.0 / (self.v_light * self.z0))
        if self.ind_density == 0.0:
            object.__setattr__(self, "ind_density", self.z0 / self.v_light)
        z0_check = math.sqrt(self.ind_density / self.cap_density)
        v_check = 1.0 / math.sqrt(self.ind_density * self.cap_density)
        if abs(z0_check - self.z0) > 1e-9 * self.z0:
            raise ConfigError("line densities inconsistent with z0 = sqrt(ind_density/cap_density)")
        if abs(v_check - self.v_light) > 1e-9 * self.v_light:
            raise ConfigError("line densities inconsistent with v_light = 1/sqrt(ind*cap)")


@dataclass(frozen=True)
class SourceConfig:
    """Drive + modulated capacitance + finite observation window."""

    drive: DriveParams
    cap: TimeVaryingCap
    window_time: float

    def __post_init__(self):
        min_window = 100.0 * TWO_PI / self.cap.omega_m
        if not self.window_time > min_window:
            raise ConfigError(
                f"window_time must exceed 100 modulation periods = {min_window:.3e} s"
            )

    @property
    def guard_band(self) -> float:
        """Half-width [rad/s] of the line-dominated neighborhood of each tone."""
        return 100.0 / self.window_time


class BareOutput(NamedTuple):
    """Bare mirror coefficients at observation frequency omega."""

    elastic: complex  # amplitude multiplying the same-frequency input
    s_upper: complex  # mixing with the input at omega_m + omega
    s_lower: complex  # mixing with the conjugate input at omega_m - omega
    h: complex  # drive-sourced amplitude


def capacitance_at(cap: TimeVaryingCap, t):
    """C(t) = c0 + delta_c * cos(omega_m * t)."""
    return cap.c0 + cap.delta_c * np.cos(cap.omega_m * np.asarray(t, dtype=float))


def effective_length(c0: float, line: LineParams) -> float:
    """Apparent extra line length of the terminating capacitance, c0 / cap_density [m]."""
    return c0 / line.cap_density


def s_coefficient(delta_c: float, z0: float, omega1, omega2):
    """Frequency-mixing amplitude -i * delta_c * z0 * sqrt(omega1*omega2).

    Zero whenever either frequency is non-positive (step-function convention
    with theta(0) = 0); symmetric in its two frequencies.
    """
    w1 = np.asarray(omega1, dtype=float)
    w2 = np.asarray(omega2, dtype=float)
    active = (w1 > 0.0) & (w2 > 0.0)
    value = np.where(active, -1j * delta_c * z0 * np.sqrt(np.abs(w1) * np.abs(w2)), 0.0 + 0.0j)
    if np.ndim(omega1) == 0 and np.ndim(omega2) == 0:
        return complex(value)
    return value


def _tones(cfg: SourceConfig) -> list[tuple[float, float, float]]:
    """Sinusoid decomposition of C(t)V(t): list of (amplitude, frequency, phase).

    C(t)V(t) = sum_k A_k * cos(nu_k*t + phi_k) with the product cosine split
    into sum and difference tones. Tones at zero frequency or zero amplitude
    carry no weight in the derivative and are dropped.
    """
    drv, cap = cfg.drive, cfg.cap
    raw = [
        (cap.c0 * drv.v_pp, drv.omega_d, drv.phase),
        (cap.delta_c * drv.v_pp / 2.0, cap.omega_m + drv.omega_d, drv.phase),
        (cap.delta_c * drv.v_pp / 2.0, cap.omega_m - drv.omega_d, -drv.phase),
    ]
    tones = []
    for amp, nu, phi in raw:
        if nu < 0.0:  # cos is even: fold onto a positive frequency
            nu, phi = -nu, -phi
        if amp != 0.0 and nu != 0.0:
            tones.append((amp, nu, phi))
    return tones


def _turn_on_jump(cfg: SourceConfig) -> float:
    """Discontinuity of theta(t)C(t)V(t) at t = 0, i.e. C(0)V(0)."""
    return (cfg.cap.c0 + cfg.cap.delta_c) * cfg.drive.v_pp * math.cos(cfg.drive.phase)


def source_time(cfg: SourceConfig, t):
    """Source term F(t) = d/dt[C(t)V(t)] for t in (0, window_time].

    The delta spike of the turn-on discontinuity at t = 0 is not representable
    pointwise; at t = 0 the one-sided derivative limit is returned.
    """
    tt = np.asarray(t, dtype=float)
    if np.any(tt < 0.0) or np.any(tt > cfg.window_time):
        raise ConfigError("t outside [0, window_time]")
    total = np.zeros_like(tt)
    for amp, nu, phi in _tones(cfg):
        total = total - amp * nu * np.sin(nu * tt + phi)
    return float(total) if np.ndim(t) == 0 else total


def _window_kernel(u, window_time: float):
    """E(u) = Integral_0^T exp(i*u*t) dt = (exp(i*u*T) - 1)/(i*u), with E(0) = T."""
    u = np.asarray(u, dtype=float)
    ut = u * window_time
    small = np.abs(ut) < 1e-8
    # second-order series around u = 0 avoids catastrophic cancellation
    series = window_time * (1.0 + 0.5j * ut - ut**2 / 6.0)
    safe_u = np.where(small, 1.0, u)
    exact = (np.exp(1j * safe_u * window_time) - 1.0) / (1j * safe_u)
    return np.where(small, series, exact)


def windowed_source_transform(cfg: SourceConfig, omega):
    """Closed-form turn-on transform (2*pi)^(-1/2) * Integral_0^T F(t) e^(i*omega*t) dt.

    Valid at any omega > 0, including on the coherent drive lines where the
    value grows linearly with the window length.
    """
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0.0):
        raise ConfigError("omega must be strictly positive")
    total = np.full_like(w, _turn_on_jump(cfg), dtype=complex)
    for amp, nu, phi in _tones(cfg):
        total = total + (0.5j * amp * nu) * (
            np.exp(1j * phi) * _window_kernel(w + nu, cfg.window_time)
            - np.exp(-1j * phi) * _window_kernel(w - nu, cfg.window_time)
        )
    result = total / _SQRT_2PI
    return complex(result) if np.ndim(omega) == 0 else result


def source_spectrum(cfg: SourceConfig, omega):
    """Steady (window-independent) part of the source transform at omega > 0.

    This is the smooth principal-value component left after the coherent
    lines at the drive tones are split off; it is what the photon-flux
    assembly consumes. Raises GuardBandError within guard_band of any tone.
    """
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0.0):
        raise ConfigError("omega must be strictly positive")
    if cfg.drive.v_pp == 0.0:
        zero = np.zeros_like(w, dtype=complex)
        return complex(zero) if np.ndim(omega) == 0 else zero
    for _, nu, _ in _tones(cfg):
        if np.any(np.abs(w - nu) < cfg.guard_band):
            raise GuardBandError(
                f"omega within guard band ({cfg.guard_band:.3e} rad/s) of drive tone at {nu:.6e} rad/s"
            )
    total = np.full_like(w, _turn_on_jump(cfg), dtype=complex)
    for amp, nu, phi in _tones(cfg):
        total = total - (amp * nu / 2.0) * (
            np.exp(1j * phi) / (w + nu) - np.exp(-1j * phi) / (w - nu)
        )
    result = total / _SQRT_2PI
    return complex(result) if np.ndim(omega) == 0 else result


def line_weights(cfg: SourceConfig) -> dict[float, complex]:
    """Integrated coherent-line weights {tone frequency: weight}.

    Weight of the delta line at nu_k in the infinite-window transform:
    -i * (pi/2) * (2*pi)^(-1/2) * A_k * nu_k * exp(-i*phi_k).
    """
    return {
        nu: -0.5j * math.pi * amp * nu * np.exp(-1j * phi) / _SQRT_2PI
        for amp, nu, phi in _tones(cfg)
    }


def h_coefficient(omega, cfg: SourceConfig, line: LineParams, part: str = "steady"):
    """Drive-sourced emission amplitude -i * sqrt(4*pi*z0/(hbar*omega)) * spectrum.

    `part` selects the spectral component: "steady" (default; consumed by the
    flux assembly) or "windowed" (full finite-window transform, used for
    oracle comparisons).
    """
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0.0):
        raise ConfigError("omega must be strictly positive")
    if part == "steady":
        density = source_spectrum(cfg, omega)
    elif part == "windowed":
        density = windowed_source_transform(cfg, omega)
    else:
        raise ConfigError(f"unknown spectral part {part!r}")
    result = -1j * np.sqrt(4.0 * math.pi * line.z0 / (HBAR * w)) * density
    return complex(result) if np.ndim(omega) == 0 else result


def single_mirror_output(omega: float, cfg: SourceConfig, line: LineParams) -> BareOutput:
    """Bare output coefficients (elastic, s_upper, s_lower, h) at 0 < omega <= omega_m.

    elastic multiplies the input at omega, s_upper the input at omega_m+omega,
    s_lower the conjugated input at omega_m-omega, and h is the drive-sourced
    term. The s_lower edge at omega = omega_m vanishes by the theta(0) = 0
    convention.
    """
    if not 0.0 < omega <= cfg.cap.omega_m:
        raise ConfigError("single_mirror_output requires 0 < omega <= modulation frequency")
    dc, z0, om = cfg.cap.delta_c, line.z0, cfg.cap.omega_m
    h = 0.0 + 0.0j if cfg.drive.v_pp == 0.0 else h_coefficient(omega, cfg, line)
    return BareOutput(
        elastic=1.0 + 0.0j,
        s_upper=s_coefficient(dc, z0, omega, om + omega),
        s_lower=s_coefficient(dc, z0, omega, om - omega),
        h=h,
    )
