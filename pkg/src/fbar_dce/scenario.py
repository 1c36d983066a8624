"""Scenario ingestion: named presets, JSON loading, validation, assembly.

Configs are JSON objects with explicit unit-suffixed keys; every frequency is
given in Hz and converted to angular frequency once at load. The raw mapping
is kept on the Scenario so serialization round-trips exactly.
"""

from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cavity import CavityParams
from .constants import EPS0, TWO_PI
from .errors import ConfigError
from .flux import ThermalEnv
from .mbvd import MbvdParams
from .piezo import DriveParams, FbarGeometry, MaterialProps, delta_capacitance, driven_amplitude
from .scatter import LineParams, SourceConfig, TimeVaryingCap, effective_length
from .squeeze import LcParams

_NUMBER_SCHEMA: dict[str, tuple[str, ...]] = {
    "material": (
        "youngs_modulus_pa",
        "density_kg_m3",
        "d33_m_per_v",
        "poisson_ratio",
        "sound_speed_m_s",
        "permittivity_f_m",
    ),
    "geometry": ("t_piezo_m", "area_m2", "quality", "omega_m_hz"),
    "drive": ("v_pp_volts", "phase_rad", "omega_d_hz"),
    "mbvd": ("c_m_farad", "l_m_henry", "r_m_ohm", "r_0_ohm", "r_s_ohm", "c_plate_farad"),
    "cavity": ("length_d_m", "v_light_m_s", "z0_ohm", "omega_coupling_hz"),
    "line": ("z0_ohm", "v_light_m_s"),
    "environment": ("temperature_k",),
    "grid": ("omega_min_hz", "omega_max_hz", "points"),
}

PRESET_NAMES = ("low-q", "high-q", "metamaterial")


def _base_preset() -> dict:
    return {
        "name": "low-q",
        "material": {
            "youngs_modulus_pa": 3.08e11,
            "density_kg_m3": 3230.0,
            "d33_m_per_v": 5.1e-12,
            "poisson_ratio": 0.287,
            "sound_speed_m_s": 9100.0,
            "permittivity_f_m": 9.2 * EPS0,
        },
        "geometry": {"t_piezo_m": 3.5e-7, "area_m2": 7.7e-10, "quality": 300.0, "omega_m_hz": 4.2e9},
        "drive": {"v_pp_volts": 5e-4, "phase_rad": np.pi / 2.0, "omega_d_hz": 4.2e9},
        "mbvd": {
            "c_m_farad": 6.55e-16,
            "l_m_henry": 1.043e-6,
            "r_m_ohm": 146.0,
            "r_0_ohm": 8.0,
            "r_s_ohm": 0.0,
            "c_plate_farad": 4e-13,
        },
        "cavity": {
            "length_d_m": 3.3e-2,
            "v_light_m_s": 1e8,
            "z0_ohm": 55.0,
            "omega_coupling_hz": 2.91e10,
        },
        "line": {"z0_ohm": 55.0, "v_light_m_s": 1e8},
        "environment": {"temperature_k": 0.01},
        "window_time_s": 1e-6,
        "grid": {"omega_min_hz": 8.4e7, "omega_max_hz": 4.116e9, "points": 2000},
    }


def preset_raw(name: str) -> dict:
    """Raw config mapping of a named preset."""
    if name == "low-q":
        return _base_preset()
    if name == "high-q":
        raw = _base_preset()
        raw["name"] = "high-q"
        raw["geometry"]["quality"] = 3e6
        raw["drive"]["v_pp_volts"] = 5e-6
        return raw
    if name == "metamaterial":
        # high-impedance line at the same capacitance density: slower signal,
        # proportionally reduced coupling rate (same coupling capacitance)
        raw = _base_preset()
        raw["name"] = "metamaterial"
        raw["line"] = {"z0_ohm": 1e4, "v_light_m_s": 5.5e5}
        raw["cavity"]["z0_ohm"] = 1e4
        raw["cavity"]["v_light_m_s"] = 5.5e5
        raw["cavity"]["omega_coupling_hz"] = 2.91e10 * 55.0 / 1e4
        return raw
    raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}")


@dataclass(frozen=True)
class GridSpec:
    """Strictly increasing evaluation grid inside (0, omega_m), angular units."""

    omega_min: float
    omega_max: float
    points: int


@dataclass(frozen=True)
class Scenario:
    """Validated parameter set; `raw` preserves the exact ingested mapping."""

    name: str
    material: MaterialProps
    geometry: FbarGeometry
    drive: DriveParams
    mbvd: MbvdParams
    cavity: CavityParams
    line: LineParams
    env: ThermalEnv
    window_time: float
    grid: GridSpec
    raw: dict


def _require_number(raw: dict, section: str, key: str) -> float:
    if key not in raw:
        raise ConfigError(f"missing field: {section}.{key}")
    value = raw[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"field {section}.{key} must be a number")
    return float(value)


def _validate_shape(raw: dict) -> None:
    if not isinstance(raw, dict):
        raise ConfigError("scenario root must be a JSON object")
    expected_top = set(_NUMBER_SCHEMA) | {"name", "window_time_s"}
    for key in raw:
        if key not in expected_top:
            raise ConfigError(f"unknown field: {key}")
    for section in _NUMBER_SCHEMA:
        if section not in raw:
            raise ConfigError(f"missing field: {section}")
        if not isinstance(raw[section], dict):
            raise ConfigError(f"field {section} must be an object")
        for key in raw[section]:
            if key not in _NUMBER_SCHEMA[section]:
                raise ConfigError(f"unknown field: {section}.{key}")
    if "name" not in raw:
        raise ConfigError("missing field: name")
    if not isinstance(raw["name"], str):
        raise ConfigError("field name must be a string")
    if "window_time_s" not in raw:
        raise ConfigError("missing field: window_time_s")
    if isinstance(raw["window_time_s"], bool) or not isinstance(raw["window_time_s"], (int, float)):
        raise ConfigError("field window_time_s must be a number")


def scenario_from_raw(raw: dict) -> Scenario:
    """Validate a raw mapping and assemble the typed scenario."""
    _validate_shape(raw)
    num = {
        section: {key: _require_number(raw[section], section, key) for key in keys}
        for section, keys in _NUMBER_SCHEMA.items()
    }
    material = MaterialProps(
        youngs_modulus=num["material"]["youngs_modulus_pa"],
        density=num["material"]["density_kg_m3"],
        d33=num["material"]["d33_m_per_v"],
        poisson=num["material"]["poisson_ratio"],
        sound_speed=num["material"]["sound_speed_m_s"],
        permittivity=num["material"]["permittivity_f_m"],
    )
    geometry = FbarGeometry(
        t_piezo=num["geometry"]["t_piezo_m"],
        area=num["geometry"]["area_m2"],
        quality=num["geometry"]["quality"],
        omega_m=TWO_PI * num["geometry"]["omega_m_hz"],
    )
    drive = DriveParams(
        v_pp=num["drive"]["v_pp_volts"],
        phase=num["drive"]["phase_rad"],
        omega_d=TWO_PI * num["drive"]["omega_d_hz"],
    )
    mbvd = MbvdParams(
        c_m=num["mbvd"]["c_m_farad"],
        l_m=num["mbvd"]["l_m_henry"],
        r_m=num["mbvd"]["r_m_ohm"],
        r_0=num["mbvd"]["r_0_ohm"],
        r_s=num["mbvd"]["r_s_ohm"],
        c_plate=num["mbvd"]["c_plate_farad"],
    )
    line = LineParams(z0=num["line"]["z0_ohm"], v_light=num["line"]["v_light_m_s"])
    cavity = CavityParams(
        length_d=num["cavity"]["length_d_m"],
        v_light=num["cavity"]["v_light_m_s"],
        z0=num["cavity"]["z0_ohm"],
        omega_coupling=TWO_PI * num["cavity"]["omega_coupling_hz"],
        l_eff=effective_length(mbvd.c_plate, line),
    )
    env = ThermalEnv(temperature=num["environment"]["temperature_k"])
    if not isinstance(raw["grid"]["points"], int) or raw["grid"]["points"] < 2:
        raise ConfigError("field grid.points must be an integer >= 2")
    grid = GridSpec(
        omega_min=TWO_PI * num["grid"]["omega_min_hz"],
        omega_max=TWO_PI * num["grid"]["omega_max_hz"],
        points=raw["grid"]["points"],
    )
    if not 0.0 < grid.omega_min < grid.omega_max < geometry.omega_m:
        raise ConfigError("grid must satisfy 0 < omega_min < omega_max < geometry omega_m")
    window_time = float(raw["window_time_s"])
    # window invariant is enforced by SourceConfig below
    scenario = Scenario(
        name=raw["name"],
        material=material,
        geometry=geometry,
        drive=drive,
        mbvd=mbvd,
        cavity=cavity,
        line=line,
        env=env,
        window_time=window_time,
        grid=grid,
        raw=copy.deepcopy(raw),
    )
    source_config(scenario)  # exercises window-length and displacement-validity invariants
    return scenario


def load_scenario(path_or_preset: str | Path) -> Scenario:
    """Load a scenario from a preset name or a JSON file path."""
    name = str(path_or_preset)
    if name in PRESET_NAMES:
        return scenario_from_raw(preset_raw(name))
    path = Path(path_or_preset)
    if not path.exists():
        raise ConfigError(f"scenario {name!r} is neither a preset nor an existing file")
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {name}: {exc}") from exc
    return scenario_from_raw(raw)


def scenario_hash(sc: Scenario) -> str:
    """sha256 over the canonical JSON serialization of the raw mapping."""
    canonical = json.dumps(sc.raw, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def motional_amplitude(sc: Scenario) -> float:
    """Resonantly driven mirror amplitude of the scenario [m]."""
    return driven_amplitude(sc.material, sc.geometry, sc.drive)


def source_config(sc: Scenario, delta_x: float | None = None) -> SourceConfig:
    """Drive + modulated-capacitance configuration of the scenario.

    The static capacitance is the measured plate capacitance of the
    equivalent circuit; its modulation amplitude follows the fractional
    mirror displacement delta_x / t_piezo.
    """
    if delta_x is None:
        delta_x = motional_amplitude(sc)
    c0, delta_c = delta_capacitance(sc.material, sc.geometry, delta_x, c0=sc.mbvd.c_plate)
    cap = TimeVaryingCap(c0=c0, delta_c=delta_c, omega_m=sc.geometry.omega_m)
    return SourceConfig(drive=sc.drive, cap=cap, window_time=sc.window_time)


def grid_array(sc: Scenario) -> np.ndarray:
    """Evaluation grid [rad/s] of the scenario."""
    return np.linspace(sc.grid.omega_min, sc.grid.omega_max, sc.grid.points)


def squeeze_params(sc: Scenario) -> LcParams:
    """Lumped parametric model matched to the scenario.

    The LC mode is tuned to half the modulation frequency (two-photon
    resonance) with the cavity capacitance equal to the mirror plate
    capacitance, the gap equal to the film thickness, and the mirror swing
    equal to the scenario's driven amplitude.
    """
    omega_lc = sc.geometry.omega_m / 2.0
    cap_total = 2.0 * sc.mbvd.c_plate
    inductance = 1.0 / (omega_lc**2 * cap_total)
    return LcParams(
        inductance=inductance,
        cap_cavity=sc.mbvd.c_plate,
        cap_mirror=sc.mbvd.c_plate,
        gap=sc.geometry.t_piezo,
        delta_x=motional_amplitude(sc),
        omega_m=sc.geometry.omega_m,
    )
