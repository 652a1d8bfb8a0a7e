"""Scenario file loading: flat JSON in SI base units.

A scenario holds a complete SystemParams plus run settings. Unknown
keys are rejected so typos cannot silently fall back to defaults.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path

from .params import SystemParams

_PARAM_KEYS = tuple(f.name for f in fields(SystemParams))

_RUN_DEFAULTS = {
    "protocol": "both",
    "grid_step": 1e-3,
    "seed": 12345,
    "n_rounds": 1,
    "out_dir": ".",
}


@dataclass(frozen=True)
class Scenario:
    params: SystemParams
    protocol: str
    grid_step: float
    seed: int
    n_rounds: int
    out_dir: str


class ScenarioError(ValueError):
    pass


def load_scenario(path: str | Path) -> Scenario:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ScenarioError("scenario file must contain a JSON object")
    unknown = set(raw) - set(_PARAM_KEYS) - set(_RUN_DEFAULTS)
    if unknown:
        raise ScenarioError(f"unknown scenario keys: {sorted(unknown)}")
    missing = set(_PARAM_KEYS) - set(raw)
    if missing:
        raise ScenarioError(f"missing scenario keys: {sorted(missing)}")
    kwargs = {k: raw[k] for k in _PARAM_KEYS}
    kwargs["n_fl"] = int(kwargs["n_fl"])
    kwargs["gains_fl"] = tuple(float(g) for g in kwargs["gains_fl"])
    try:
        params = SystemParams(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"invalid scenario parameters: {exc}") from exc
    run = {k: raw.get(k, d) for k, d in _RUN_DEFAULTS.items()}
    if run["protocol"] not in ("aloha", "saloha", "both"):
        raise ScenarioError(f"unknown protocol {run['protocol']!r}")
    return Scenario(
        params=params,
        protocol=str(run["protocol"]),
        grid_step=float(run["grid_step"]),
        seed=int(run["seed"]),
        n_rounds=int(run["n_rounds"]),
        out_dir=str(run["out_dir"]),
    )


def dump_scenario(scenario: Scenario) -> str:
    """Serialize back to the on-disk JSON form (round-trip safe)."""
    params = scenario.params
    data = {k: getattr(params, k) for k in _PARAM_KEYS}
    data["gains_fl"] = list(params.gains_fl)
    data.update(
        protocol=scenario.protocol,
        grid_step=scenario.grid_step,
        seed=scenario.seed,
        n_rounds=scenario.n_rounds,
        out_dir=scenario.out_dir,
    )
    return json.dumps(data, indent=2)
