"""Run configuration: a flat, strictly validated key-value file.

The format is INI-like with ``[section]`` headers and ``key = value``
lines; ``#`` or ``;`` start a comment.  Keys carry explicit units in
their names (``nu_q1_ghz``, ``dt_ns``).  Unknown sections or keys are
rejected with the offending line number, as are type errors, so a typo
never silently changes a run.

Sections: ``[device]`` (Table-style GHz values), ``[pulse]``
(``type = idle | single_step | swap3`` plus the parameters of that
type), ``[numerics]`` (integration and sampling steps, bus truncation),
``[output]`` (output directory) and the optional ``[optimize]`` block
(initial values, bounds and budget for the pulse-parameter search).
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from pathlib import Path

from .model import DeviceParams
from .optimizer import OptimizationProblem, single_step_problem, swap_problem
from .pulses import (
    CZPulseSpec,
    FrequencyTrajectory,
    SwapCZPulseSpec,
    constant_trajectory,
    cz_trajectory,
    swap_cz_trajectory,
)


class ConfigError(ValueError):
    """Malformed or invalid run configuration."""


PULSE_TYPES = ("idle", "single_step", "swap3")

# section -> key -> (type, required, default)
_DEVICE_SCHEMA = {
    "nu_q1_ghz": (float, True, None),
    "nu_b_ghz": (float, True, None),
    "nu_q2_ghz": (float, True, None),
    "eta1_ghz": (float, True, None),
    "eta2_ghz": (float, True, None),
    "g_b1_mhz": (float, True, None),
    "g_b2_mhz": (float, True, None),
}
_PULSE_COMMON = {
    "type": (str, True, None),
    "t_gate_ns": (float, False, 45.0),
}
_PULSE_SINGLE = {
    "undershoot_mhz": (float, True, None),
    "t_undershoot_ns": (float, True, None),
    "sigma_in_ns": (float, False, 3.0),
    "sigma_fin_ns": (float, False, 3.0),
}
_PULSE_SWAP = {
    "move_qubit": (int, False, 1),
    "sigma_ns": (float, False, 0.5),
    "step_gap_ns": (float, False, 2.0),
    "lead_in_ns": (float, False, 3.0),
    "move1_dwell_ns": (float, True, None),
    "dwell_nu_ghz": (float, True, None),
    "dwell_duration_ns": (float, True, None),
    "move2_dwell_ns": (float, True, None),
}
_NUMERICS_SCHEMA = {
    "dt_ns": (float, False, 0.01),
    "sample_dt_ns": (float, False, 0.25),
    "bus_levels": (int, False, 3),
}
_OUTPUT_SCHEMA = {
    "dir": (str, False, "out"),
}
_OPT_COMMON = {
    "seed": (int, False, 1234),
    "max_evals": (int, False, 500),
    "restarts": (int, False, 3),
}
_OPT_SINGLE = {
    "init_undershoot_mhz": (float, False, 10.0),
    "min_undershoot_mhz": (float, False, 2.0),
    "max_undershoot_mhz": (float, False, 25.0),
    "init_t_undershoot_ns": (float, False, 26.0),
    "min_t_undershoot_ns": (float, False, 15.0),
    "max_t_undershoot_ns": (float, False, 32.0),
}
_OPT_SWAP = {
    "init_move1_dwell_ns": (float, False, 10.0),
    "min_move1_dwell_ns": (float, False, 6.0),
    "max_move1_dwell_ns": (float, False, 14.0),
    "init_dwell_nu_ghz": (float, False, 6.2),
    "min_dwell_nu_ghz": (float, False, 6.05),
    "max_dwell_nu_ghz": (float, False, 6.45),
    "init_dwell_duration_ns": (float, False, 14.0),
    "min_dwell_duration_ns": (float, False, 6.0),
    "max_dwell_duration_ns": (float, False, 18.0),
    "init_move2_dwell_ns": (float, False, 10.0),
    "min_move2_dwell_ns": (float, False, 6.0),
    "max_move2_dwell_ns": (float, False, 14.0),
}


def _parse_lines(text: str, source: str) -> dict[str, dict[str, tuple[str, int]]]:
    """Raw (section, key) -> (value string, line number)."""
    sections: dict[str, dict[str, tuple[str, int]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("#", ";")):
            continue
        # inline comments after whitespace
        for mark in (" #", "\t#", " ;", "\t;"):
            cut = line.find(mark)
            if cut != -1:
                line = line[:cut].rstrip()
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"{source}:{lineno}: malformed section header {line!r}")
            current = line[1:-1].strip().lower()
            if current in sections:
                raise ConfigError(f"{source}:{lineno}: duplicate section [{current}]")
            sections[current] = {}
            continue
        if current is None:
            raise ConfigError(f"{source}:{lineno}: key outside any [section]")
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key = key.strip().lower()
        if key in sections[current]:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r} in [{current}]")
        sections[current][key] = (value.strip(), lineno)
    return sections


def _apply_schema(
    raw: dict[str, tuple[str, int]], schema: dict, section: str, source: str
) -> dict:
    out = {}
    for key, (typ, required, default) in schema.items():
        if key in raw:
            text, lineno = raw[key]
            try:
                out[key] = typ(text) if typ is not str else text.lower()
            except ValueError:
                raise ConfigError(
                    f"{source}:{lineno}: key {key!r} expects {typ.__name__}, got {text!r}"
                ) from None
        elif required:
            raise ConfigError(f"{source}: missing required key {key!r} in [{section}]")
        else:
            out[key] = default
    for key, (_, lineno) in raw.items():
        if key not in schema:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r} in [{section}]")
    return out


@dataclass(frozen=True)
class RunConfig:
    device: dict
    pulse: dict
    numerics: dict
    output: dict
    optimize: dict
    source: str

    @property
    def pulse_type(self) -> str:
        return self.pulse["type"]

    @property
    def dt(self) -> float:
        return self.numerics["dt_ns"]

    @property
    def sample_dt(self) -> float:
        return self.numerics["sample_dt_ns"]

    @property
    def out_dir(self) -> Path:
        return Path(self.output["dir"])

    def device_params(self, bus_levels: int | None = None) -> DeviceParams:
        d = self.device
        return DeviceParams.from_ghz(
            nu_q1=d["nu_q1_ghz"],
            nu_b=d["nu_b_ghz"],
            nu_q2=d["nu_q2_ghz"],
            eta_1=d["eta1_ghz"],
            eta_2=d["eta2_ghz"],
            g_b1=d["g_b1_mhz"] / 1e3,
            g_b2=d["g_b2_mhz"] / 1e3,
            bus_levels=self.numerics["bus_levels"] if bus_levels is None else bus_levels,
        )

    def pulse_spec(self, params: DeviceParams | None = None):
        """CZPulseSpec/SwapCZPulseSpec for this config, or None for idle."""
        params = params or self.device_params()
        p = self.pulse
        if p["type"] == "idle":
            return None
        if p["type"] == "single_step":
            return CZPulseSpec(
                device=params,
                undershoot=p["undershoot_mhz"],
                t_undershoot=p["t_undershoot_ns"],
                sigma_in=p["sigma_in_ns"],
                sigma_fin=p["sigma_fin_ns"],
                t_gate=p["t_gate_ns"],
            )
        return SwapCZPulseSpec(
            device=params,
            move1_dwell=p["move1_dwell_ns"],
            dwell_nu=p["dwell_nu_ghz"],
            dwell_duration=p["dwell_duration_ns"],
            move2_dwell=p["move2_dwell_ns"],
            move_qubit=p["move_qubit"],
            sigma=p["sigma_ns"],
            t_gate=p["t_gate_ns"],
            step_gap=p["step_gap_ns"],
            lead_in=p["lead_in_ns"],
        )

    def trajectory(self, params: DeviceParams | None = None) -> FrequencyTrajectory:
        params = params or self.device_params()
        spec = self.pulse_spec(params)
        if spec is None:
            return constant_trajectory(params, self.pulse["t_gate_ns"])
        if isinstance(spec, CZPulseSpec):
            return cz_trajectory(spec)
        return swap_cz_trajectory(spec)

    def problem(
        self, params: DeviceParams | None = None, seed: int | None = None
    ) -> OptimizationProblem:
        """Optimization problem for this config's pulse type."""
        params = params or self.device_params()
        o = self.optimize
        p = self.pulse
        common = dict(
            seed=o["seed"] if seed is None else seed,
            max_evals=o["max_evals"],
            restarts=o["restarts"],
            dt=self.dt,
            t_gate=p["t_gate_ns"],
        )
        if p["type"] == "single_step":
            return single_step_problem(
                params,
                initial=(o["init_undershoot_mhz"], o["init_t_undershoot_ns"]),
                lower=(o["min_undershoot_mhz"], o["min_t_undershoot_ns"]),
                upper=(o["max_undershoot_mhz"], o["max_t_undershoot_ns"]),
                sigma_in=p["sigma_in_ns"],
                sigma_fin=p["sigma_fin_ns"],
                **common,
            )
        if p["type"] == "swap3":
            return swap_problem(
                params,
                initial=(
                    o["init_move1_dwell_ns"],
                    o["init_dwell_nu_ghz"],
                    o["init_dwell_duration_ns"],
                    o["init_move2_dwell_ns"],
                ),
                lower=(
                    o["min_move1_dwell_ns"],
                    o["min_dwell_nu_ghz"],
                    o["min_dwell_duration_ns"],
                    o["min_move2_dwell_ns"],
                ),
                upper=(
                    o["max_move1_dwell_ns"],
                    o["max_dwell_nu_ghz"],
                    o["max_dwell_duration_ns"],
                    o["max_move2_dwell_ns"],
                ),
                move_qubit=p["move_qubit"],
                sigma=p["sigma_ns"],
                step_gap=p["step_gap_ns"],
                lead_in=p["lead_in_ns"],
                **common,
            )
        raise ConfigError(f"{self.source}: pulse type {p['type']!r} has no optimizable parameters")


def parse_config(text: str, source: str = "<string>") -> RunConfig:
    raw = _parse_lines(text, source)
    known = {"device", "pulse", "numerics", "output", "optimize"}
    for section in raw:
        if section not in known:
            lineno = min(ln for _, ln in raw[section].values()) if raw[section] else 0
            raise ConfigError(f"{source}:{lineno}: unknown section [{section}]")
    if "device" not in raw:
        raise ConfigError(f"{source}: missing required section [device]")
    if "pulse" not in raw:
        raise ConfigError(f"{source}: missing required section [pulse]")

    device = _apply_schema(raw["device"], _DEVICE_SCHEMA, "device", source)

    pulse_raw = raw["pulse"]
    if "type" not in pulse_raw:
        raise ConfigError(f"{source}: missing required key 'type' in [pulse]")
    ptype = pulse_raw["type"][0].strip().lower().replace("-", "_")
    if ptype not in PULSE_TYPES:
        lineno = pulse_raw["type"][1]
        raise ConfigError(
            f"{source}:{lineno}: pulse type must be one of {', '.join(PULSE_TYPES)}; got {ptype!r}"
        )
    pulse_schema = dict(_PULSE_COMMON)
    if ptype == "single_step":
        pulse_schema.update(_PULSE_SINGLE)
    elif ptype == "swap3":
        pulse_schema.update(_PULSE_SWAP)
    pulse = _apply_schema(pulse_raw, pulse_schema, "pulse", source)
    pulse["type"] = ptype

    numerics = _apply_schema(raw.get("numerics", {}), _NUMERICS_SCHEMA, "numerics", source)
    output = _apply_schema(raw.get("output", {}), _OUTPUT_SCHEMA, "output", source)
    opt_schema = dict(_OPT_COMMON)
    if ptype == "single_step":
        opt_schema.update(_OPT_SINGLE)
    elif ptype == "swap3":
        opt_schema.update(_OPT_SWAP)
    optimize = _apply_schema(raw.get("optimize", {}), opt_schema, "optimize", source)

    if numerics["dt_ns"] <= 0 or numerics["sample_dt_ns"] <= 0:
        raise ConfigError(f"{source}: dt_ns and sample_dt_ns must be positive")
    if numerics["bus_levels"] < 3:
        raise ConfigError(f"{source}: bus_levels must be >= 3")

    return RunConfig(
        device=device,
        pulse=pulse,
        numerics=numerics,
        output=output,
        optimize=optimize,
        source=source,
    )


def fixture_path(name: str) -> Path:
    """Path of a bundled fixture config (``idle``, ``cz_optimum``, ...)."""
    base = importlib.resources.files("buscz") / "fixtures" / f"{name}.cfg"
    if not base.is_file():
        available = sorted(
            p.name[:-4]
            for p in (importlib.resources.files("buscz") / "fixtures").iterdir()
            if p.name.endswith(".cfg")
        )
        raise ConfigError(f"unknown fixture {name!r}; bundled fixtures: {', '.join(available)}")
    return Path(str(base))


def load_config(path_or_fixture: str) -> RunConfig:
    """Read a config file; bare names fall back to the bundled fixtures."""
    p = Path(path_or_fixture)
    if not p.is_file() and "/" not in path_or_fixture and not path_or_fixture.endswith(".cfg"):
        p = fixture_path(path_or_fixture)
    if not p.is_file():
        raise ConfigError(f"config file not found: {path_or_fixture}")
    return parse_config(p.read_text(), source=str(p))
