"""Run configuration: INI files with a strict schema.

A config has a required [params] section (the eight cavity parameters) and
optional per-topic sections whose keys all carry documented defaults.
Unknown sections or keys are rejected rather than ignored, so typos fail
loudly.  Floats round-trip exactly: values are re-emitted with repr(), the
shortest representation that parses back to the same double.
"""

import configparser
import io

from .params import CONFIG_KEYS, SystemParams


class ConfigError(ValueError):
    """Malformed configuration (parse failure, unknown or missing key)."""


# section -> key -> (type, default); params has no defaults, all keys required
SCHEMA = {
    "run": {
        "seed": (int, 0),
        "threads": (int, 0),          # 0 = machine parallelism
    },
    "integration": {
        "t_end": (float, 200.0),
        "dt": (float, 1e-3),
        "transient_fraction": (float, 0.5),
        "divergence_guard": (float, 1e6),
    },
    "ics": {
        "count": (int, 100),
        "radius": (float, 5.0),
    },
    "grid": {                          # spectrum frequency grid
        "omega_min": (float, -15.0),
        "omega_max": (float, 15.0),
        "omega_points": (int, 3001),
    },
    "sweep": {                         # phase-diagram grid / drive sweeps
        "delta2_min": (float, -5.0),
        "delta2_max": (float, 5.0),
        "delta2_points": (int, 61),
        "omega2_min": (float, 0.0),
        "omega2_max": (float, 6.0),
        "omega2_points": (int, 61),
    },
    "cumulant": {
        "modes": (int, 3),
    },
    "oracle": {
        "modes": (int, 1),
        "cutoff": (int, 0),            # 0 = per-mode default (30 / 5)
    },
}

ORACLE_DEFAULT_CUTOFF = {1: 30, 3: 5}


class RunConfig:
    """Resolved configuration: params plus per-section option dicts."""

    def __init__(self, params, sections):
        self.params = params
        self.sections = sections

    def __getitem__(self, section):
        return self.sections[section]

    def to_dict(self):
        d = {"params": {k: v for k, v in self.params.to_dict().items()}}
        d.update({s: dict(v) for s, v in self.sections.items()})
        return d


def default_sections():
    return {s: {k: d for k, (_, d) in keys.items()} for s, keys in SCHEMA.items()}


def load_config(path=None, text=None):
    """Parse a config file (or literal text); raises ConfigError on any
    deviation from the schema."""
    cp = configparser.ConfigParser(interpolation=None)
    try:
        if text is not None:
            cp.read_string(text)
        else:
            with open(path) as fh:
                cp.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc

    if "params" not in cp:
        raise ConfigError("missing required section [params]")
    raw_params = dict(cp["params"])
    for key in CONFIG_KEYS:
        if key not in raw_params:
            raise ConfigError(f"missing required key 'params.{key}'")
    try:
        params = SystemParams.from_dict(
            {k: float(v) for k, v in raw_params.items()})
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    sections = default_sections()
    for sec in cp.sections():
        if sec == "params":
            continue
        if sec not in SCHEMA:
            raise ConfigError(f"unknown section [{sec}]")
        for key, raw in cp[sec].items():
            if key not in SCHEMA[sec]:
                raise ConfigError(f"unknown key '{sec}.{key}'")
            typ, _ = SCHEMA[sec][key]
            try:
                sections[sec][key] = typ(raw) if typ is not int else int(raw, 0)
            except ValueError as exc:
                raise ConfigError(
                    f"bad value for '{sec}.{key}': {raw!r}") from exc
    return RunConfig(params=params, sections=sections)


def dump_config(cfg):
    """Canonical INI text for a RunConfig (exact float round-trip)."""
    cp = configparser.ConfigParser(interpolation=None)
    cp["params"] = {k: repr(float(v)) for k, v in cfg.params.to_dict().items()}
    for sec, options in cfg.sections.items():
        cp[sec] = {k: (repr(v) if isinstance(v, float) else str(v))
                   for k, v in options.items()}
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()


def config_from_params(params, **overrides):
    """RunConfig with library defaults; overrides = {'section.key': value}."""
    sections = default_sections()
    for dotted, value in overrides.items():
        sec, key = dotted.split(".", 1)
        if sec not in SCHEMA or key not in SCHEMA[sec]:
            raise ConfigError(f"unknown key '{dotted}'")
        sections[sec][key] = SCHEMA[sec][key][0](value)
    return RunConfig(params=params, sections=sections)
