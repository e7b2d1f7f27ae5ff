"""Run configuration parsed from plain `key = value` input files.

The file format is line oriented: blank lines and `#` comments are ignored,
every other line must be `key = value`.  Unknown keys and duplicate keys are
rejected with their line number so a typo cannot silently fall back to a
default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

FIELD_AXIS_CHOICES = ("x", "y", "z")
QCQS_CHOICES = ("simulator", "computer")
BACKEND_CHOICES = ("internal", "ibm", "rigetti")
COMPILE_CHOICES = ("none", "generic", "domain_specific")
UNITS_CHOICES = ("dimensionless", "ev_fs")
SPIN_CHOICES = ("up", "down", "0", "1")

MAX_QUBITS = 24


class ConfigError(ValueError):
    """Raised for malformed or inconsistent run configuration."""


@dataclass(frozen=True)
class RunConfig:
    jx: float = 0.0
    jy: float = 0.0
    jz: float = 0.0
    h_ext: float = 0.0
    ext_dir: str = "x"
    num_qubits: int = 2
    initial_spins: tuple[str, ...] | None = None
    delta_t: float = 0.1
    steps: int = 10
    qcqs: str = "simulator"
    shots: int = 0
    noise_choice: bool = False
    device_choice: str = ""
    plot_flag: bool = True
    time_dep_flag: bool = False
    freq: float = 0.0
    custom_time_dep: str = ""
    backend: str = "internal"
    compile_mode: str = "none"
    units: str = "dimensionless"
    seed: int = 1


# Input-file key -> (RunConfig attribute, parser).  Parsers get (value, line)
# and raise ConfigError on bad input.


def _parse_float(value: str, line_no: int, key: str) -> float:
    try:
        out = float(value)
    except ValueError:
        raise ConfigError(f"line {line_no}: {key} expects a number, got {value!r}") from None
    if not math.isfinite(out):
        raise ConfigError(f"line {line_no}: {key} must be finite")
    return out


def _parse_int(value: str, line_no: int, key: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"line {line_no}: {key} expects an integer, got {value!r}") from None


def _parse_bool(value: str, line_no: int, key: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ConfigError(f"line {line_no}: {key} expects true or false, got {value!r}")


def _choice_parser(choices: tuple[str, ...]):
    def parse(value: str, line_no: int, key: str) -> str:
        lowered = value.lower()
        if lowered not in choices:
            raise ConfigError(
                f"line {line_no}: {key} must be one of {', '.join(choices)}; got {value!r}"
            )
        return lowered

    return parse


def _parse_spins(value: str, line_no: int, key: str) -> tuple[str, ...]:
    spins = tuple(part.strip().lower() for part in value.split(","))
    for spin in spins:
        if spin not in SPIN_CHOICES:
            raise ConfigError(
                f"line {line_no}: {key} entries must be up/down/0/1, got {spin!r}"
            )
    return spins


def _parse_string(value: str, line_no: int, key: str) -> str:
    return value


_KEYS = {
    "Jx": ("jx", _parse_float),
    "Jy": ("jy", _parse_float),
    "Jz": ("jz", _parse_float),
    "h_ext": ("h_ext", _parse_float),
    "ext_dir": ("ext_dir", _choice_parser(FIELD_AXIS_CHOICES)),
    "num_qubits": ("num_qubits", _parse_int),
    "initial_spins": ("initial_spins", _parse_spins),
    "delta_t": ("delta_t", _parse_float),
    "steps": ("steps", _parse_int),
    "QCQS": ("qcqs", _choice_parser(QCQS_CHOICES)),
    "shots": ("shots", _parse_int),
    "noise_choice": ("noise_choice", _parse_bool),
    "device_choice": ("device_choice", _parse_string),
    "plot_flag": ("plot_flag", _parse_bool),
    "time_dep_flag": ("time_dep_flag", _parse_bool),
    "freq": ("freq", _parse_float),
    "custom_time_dep": ("custom_time_dep", _parse_string),
    "backend": ("backend", _choice_parser(BACKEND_CHOICES)),
    "compile": ("compile_mode", _choice_parser(COMPILE_CHOICES)),
    "units": ("units", _choice_parser(UNITS_CHOICES)),
    "seed": ("seed", _parse_int),
}


def validate_config(config: RunConfig) -> list[str]:
    """Cross-field consistency checks; returns human-readable problems."""
    problems = []
    if not 1 <= config.num_qubits <= MAX_QUBITS:
        problems.append(f"num_qubits must be between 1 and {MAX_QUBITS}")
    if config.initial_spins is not None and len(config.initial_spins) != config.num_qubits:
        problems.append(
            f"initial_spins lists {len(config.initial_spins)} entries "
            f"but num_qubits is {config.num_qubits}"
        )
    if config.delta_t <= 0:
        problems.append("delta_t must be positive")
    if config.steps < 0:
        problems.append("steps must be non-negative")
    if config.shots < 0:
        problems.append("shots must be non-negative")
    if config.qcqs == "computer" and config.shots < 1:
        problems.append("QCQS = computer requires shots >= 1")
    if config.noise_choice and config.shots < 1:
        problems.append("noise_choice requires shots >= 1")
    if config.compile_mode != "none" and config.backend == "internal":
        problems.append("compile requires backend = ibm or rigetti")
    if config.time_dep_flag and config.custom_time_dep and config.freq != 0.0:
        problems.append("freq and custom_time_dep are mutually exclusive")
    return problems


def parse_input_text(text: str) -> RunConfig:
    values: dict[str, object] = {}
    seen: dict[str, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_no}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KEYS:
            raise ConfigError(f"line {line_no}: unknown key {key!r}")
        if key in seen:
            raise ConfigError(
                f"line {line_no}: duplicate key {key!r} (first set on line {seen[key]})"
            )
        if not value:
            raise ConfigError(f"line {line_no}: {key} has no value")
        seen[key] = line_no
        attr, parser = _KEYS[key]
        values[attr] = parser(value, line_no, key)

    config = replace(RunConfig(), **values)
    problems = validate_config(config)
    if problems:
        raise ConfigError("; ".join(problems))
    return config


def parse_input_file(path: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    return parse_input_text(text)


def load_field_samples(path: str) -> tuple[tuple[float, float], ...]:
    """Read a tabulated drive profile: CSV rows of `time,field`.

    A single header row is allowed.  Times must be strictly increasing.
    """
    rows: list[tuple[float, float]] = []
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ConfigError(f"{path}: line {line_no}: expected 'time,field'")
            try:
                rows.append((float(parts[0]), float(parts[1])))
            except ValueError:
                if line_no == 1:
                    continue
                raise ConfigError(
                    f"{path}: line {line_no}: expected numeric 'time,field'"
                ) from None
    if not rows:
        raise ConfigError(f"{path}: no samples found")
    for (t0, _), (t1, _) in zip(rows, rows[1:]):
        if t1 <= t0:
            raise ConfigError(f"{path}: sample times must be strictly increasing")
    return tuple(rows)
