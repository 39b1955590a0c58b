"""Config-file loading for the command-line driver.

INI-style sections (link, water, scenario, detector, sweep, montecarlo)
with explicit unit suffixes on physical values, e.g. ``wavelength = 530 nm``
or ``gate_time = 200 ps``. Unknown keys and wrong units are hard errors;
an empty file yields the full default setup (clear water, scenario 1).
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field, replace

from uwqkd.environment import (
    SCENARIO_PRESETS,
    WATER_PRESETS,
    AtmosphericScenario,
    DetectorParams,
    LinkConfig,
    WaterType,
    scenario_preset,
    water_preset,
)

__all__ = ["ConfigError", "RunSettings", "load_config", "parse_angle", "parse_quantity"]


class ConfigError(ValueError):
    """Malformed configuration file or value."""


_UNIT_FACTORS = {
    "length": {"m": 1.0, "km": 1e3, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "nm": 1e-9},
    "time": {"s": 1.0, "ms": 1e-3, "us": 1e-6, "ns": 1e-9, "ps": 1e-12},
    "frequency": {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6},
    "inverse_length": {"1/m": 1.0, "m^-1": 1.0},
    "irradiance": {"W/m2": 1.0, "W/m^2": 1.0},
    "angle": {"rad": 1.0, "deg": math.pi / 180.0},
    "dimensionless": {},
}


def parse_quantity(text: str, kind: str, key: str = "value") -> float:
    """Parse ``"40 ns"``-style values; bare numbers are SI base units."""
    parts = text.strip().split()
    if len(parts) not in (1, 2):
        raise ConfigError(f"cannot parse {key} = {text!r}")
    try:
        value = float(parts[0])
    except ValueError:
        raise ConfigError(f"cannot parse {key} = {text!r} as a number") from None
    if len(parts) == 1:
        return value
    units = _UNIT_FACTORS[kind]
    if parts[1] not in units:
        raise ConfigError(
            f"unit mismatch for {key}: {parts[1]!r} is not a {kind} unit "
            f"(expected one of {sorted(units)})"
        )
    return value * units[parts[1]]


def parse_angle(text: str, key: str = "angle") -> float:
    """Angles accept radians, ``deg`` suffixes, or ``pi/N`` shorthand."""
    t = text.strip().lower()
    if t.startswith("pi/"):
        try:
            return math.pi / float(t[3:])
        except ValueError:
            raise ConfigError(f"cannot parse {key} = {text!r}") from None
    if t == "pi":
        return math.pi
    return parse_quantity(text, "angle", key)


def _parse_bool(text: str, key: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "yes", "on", "1"):
        return True
    if t in ("false", "no", "off", "0"):
        return False
    raise ConfigError(f"cannot parse {key} = {text!r} as a boolean")


def _parse_int(text: str, key: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ConfigError(f"cannot parse {key} = {text!r} as an integer") from None


@dataclass(frozen=True)
class RunSettings:
    """Everything a CLI run needs, with defaults for every omitted key."""

    water: WaterType = WATER_PRESETS["clear"]
    scenario: AtmosphericScenario = SCENARIO_PRESETS[1]
    detector: DetectorParams = field(default_factory=DetectorParams)
    use_correction: bool = False
    total_length: float = 1.0
    source_fraction: float = 0.2
    source_position: float | None = None
    depth: float = 80.0
    wavelength: float = 530e-9
    k_inf: float = 0.08
    sweep_l_min: float = 0.0
    sweep_l_max: float = 4.0
    sweep_step: float = 0.005
    sweep_betas: tuple = (math.pi / 4, math.pi / 5)
    sweep_waters: tuple = ("clear", "coastal", "turbid")
    sweep_scenarios: tuple = (1, 2, 3, 4, 5)
    mc_packets: int = 10000
    mc_photons: int = 1000
    mc_seed: int = 1

    def resolve_water(self, name: str) -> WaterType:
        """Preset lookup that honors a custom water defined in the config."""
        name = name.lower()
        return self.water if name == self.water.name else water_preset(name)

    def resolve_scenario(self, sid: int) -> AtmosphericScenario:
        """Preset lookup that honors a custom irradiance defined in the config."""
        return self.scenario if sid == self.scenario.id else scenario_preset(sid)

    def link_at(self, total_length: float, water=None, scenario=None) -> LinkConfig:
        """LinkConfig at a given length; the source scales with the length."""
        return LinkConfig(
            total_length=total_length,
            source_pos=self.source_fraction * total_length,
            depth=self.depth,
            wavelength=self.wavelength,
            k_inf=self.k_inf,
            water=water or self.water,
            scenario=scenario or self.scenario,
            detector=self.detector,
            use_correction=self.use_correction,
        )

    def fixed_link(self, water=None, scenario=None) -> LinkConfig:
        """LinkConfig at the configured total length and source position."""
        pos = self.source_position
        if pos is None:
            pos = self.source_fraction * self.total_length
        return replace(self.link_at(self.total_length, water, scenario), source_pos=pos)


_SCHEMA = {
    "link": {
        "total_length": "length",
        "source_position": "length",
        "source_fraction": "dimensionless",
        "depth": "length",
        "wavelength": "length",
        "irradiance_attenuation": "inverse_length",
    },
    "water": {"type": None, "name": None, "alpha": "inverse_length", "gamma_dep": "inverse_length"},
    "scenario": {"id": None, "irradiance": "irradiance"},
    "detector": {
        "efficiency_alice": "dimensionless",
        "efficiency_bob": "dimensionless",
        "dark_current": "frequency",
        "pulse_duration": "time",
        "gate_time": "time",
        "lens_diameter": "length",
        "filter_bandwidth": "length",
        "field_of_view": "angle",
        "error_rate": "dimensionless",
        "correction_coefficient": "dimensionless",
        "use_correction": "bool",
    },
    "sweep": {
        "l_min": "length",
        "l_max": "length",
        "step": "length",
        "betas": None,
        "waters": None,
        "scenarios": None,
    },
    "montecarlo": {"packets": "int", "photons": "int", "seed": "int"},
}


def _validate_keys(parser: configparser.ConfigParser):
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(
                f"unknown section [{section}]; expected one of {sorted(_SCHEMA)}"
            )
        for key in parser[section]:
            if key not in _SCHEMA[section]:
                raise ConfigError(
                    f"unknown key {key!r} in section [{section}]; "
                    f"expected one of {sorted(_SCHEMA[section])}"
                )


def _get(parser, section, key):
    if parser.has_section(section) and key in parser[section]:
        return parser[section][key]
    return None


def _quantity(parser, section, key, default):
    raw = _get(parser, section, key)
    if raw is None:
        return default
    kind = _SCHEMA[section][key]
    if kind == "bool":
        return _parse_bool(raw, key)
    if kind == "int":
        return _parse_int(raw, key)
    if kind == "angle":
        return parse_angle(raw, key)
    return parse_quantity(raw, kind, key)


def _water_from(parser) -> WaterType:
    type_name = _get(parser, "water", "type")
    custom = {k: _get(parser, "water", k) for k in ("name", "alpha", "gamma_dep")}
    if type_name is not None:
        if any(v is not None for v in custom.values()):
            raise ConfigError("[water] type cannot be combined with custom coefficients")
        return water_preset(type_name)
    if custom["alpha"] is not None or custom["gamma_dep"] is not None:
        if custom["alpha"] is None or custom["gamma_dep"] is None:
            raise ConfigError("custom water needs both alpha and gamma_dep")
        return WaterType(
            name=custom["name"] or "custom",
            alpha=parse_quantity(custom["alpha"], "inverse_length", "alpha"),
            gamma_dep=parse_quantity(custom["gamma_dep"], "inverse_length", "gamma_dep"),
        )
    return WATER_PRESETS["clear"]


def _scenario_from(parser) -> AtmosphericScenario:
    sid = _get(parser, "scenario", "id")
    scenario = scenario_preset(sid) if sid is not None else SCENARIO_PRESETS[1]
    irr = _get(parser, "scenario", "irradiance")
    if irr is not None:
        scenario = AtmosphericScenario(
            id=scenario.id,
            surface_irradiance=parse_quantity(irr, "irradiance", "irradiance"),
        )
    return scenario


def _list_from(parser, section, key):
    raw = _get(parser, section, key)
    if raw is None:
        return None
    return [part.strip() for part in raw.split(",") if part.strip()]


def load_config(path: str | None) -> RunSettings:
    """Load settings from an INI file; ``None`` yields pure defaults."""
    defaults = RunSettings()
    if path is None:
        return defaults
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from exc
    _validate_keys(parser)

    det = DetectorParams(
        eta_alice=_quantity(parser, "detector", "efficiency_alice", defaults.detector.eta_alice),
        eta_bob=_quantity(parser, "detector", "efficiency_bob", defaults.detector.eta_bob),
        i_dc=_quantity(parser, "detector", "dark_current", defaults.detector.i_dc),
        dt_pulse=_quantity(parser, "detector", "pulse_duration", defaults.detector.dt_pulse),
        dt_gate=_quantity(parser, "detector", "gate_time", defaults.detector.dt_gate),
        lens_d=_quantity(parser, "detector", "lens_diameter", defaults.detector.lens_d),
        d_lambda=_quantity(parser, "detector", "filter_bandwidth", defaults.detector.d_lambda),
        fov_delta=_quantity(parser, "detector", "field_of_view", defaults.detector.fov_delta),
        e_det=_quantity(parser, "detector", "error_rate", defaults.detector.e_det),
        t_corr=_quantity(parser, "detector", "correction_coefficient", defaults.detector.t_corr),
    )

    betas_raw = _list_from(parser, "sweep", "betas")
    betas = (
        tuple(parse_angle(b, "betas") for b in betas_raw)
        if betas_raw is not None
        else defaults.sweep_betas
    )
    waters_raw = _list_from(parser, "sweep", "waters")
    if waters_raw == ["all"]:
        waters_raw = None
    waters = (
        tuple(water_preset(w).name for w in waters_raw)
        if waters_raw is not None
        else defaults.sweep_waters
    )
    scenarios_raw = _list_from(parser, "sweep", "scenarios")
    if scenarios_raw == ["all"]:
        scenarios_raw = None
    scenarios = (
        tuple(scenario_preset(s).id for s in scenarios_raw)
        if scenarios_raw is not None
        else defaults.sweep_scenarios
    )

    return RunSettings(
        water=_water_from(parser),
        scenario=_scenario_from(parser),
        detector=det,
        use_correction=_quantity(parser, "detector", "use_correction", False),
        total_length=_quantity(parser, "link", "total_length", defaults.total_length),
        source_fraction=_quantity(parser, "link", "source_fraction", defaults.source_fraction),
        source_position=_quantity(parser, "link", "source_position", None),
        depth=_quantity(parser, "link", "depth", defaults.depth),
        wavelength=_quantity(parser, "link", "wavelength", defaults.wavelength),
        k_inf=_quantity(parser, "link", "irradiance_attenuation", defaults.k_inf),
        sweep_l_min=_quantity(parser, "sweep", "l_min", defaults.sweep_l_min),
        sweep_l_max=_quantity(parser, "sweep", "l_max", defaults.sweep_l_max),
        sweep_step=_quantity(parser, "sweep", "step", defaults.sweep_step),
        sweep_betas=betas,
        sweep_waters=waters,
        sweep_scenarios=scenarios,
        mc_packets=_quantity(parser, "montecarlo", "packets", defaults.mc_packets),
        mc_photons=_quantity(parser, "montecarlo", "photons", defaults.mc_photons),
        mc_seed=_quantity(parser, "montecarlo", "seed", defaults.mc_seed),
    )
