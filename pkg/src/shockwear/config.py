"""JSON run configuration: parsing, validation and normalized echo.

The model block carries one key per physical quantity (H, D1, D0, alpha1,
alpha2, beta, lambda0, eta, gamma, W, Y, optionally theta); the run block
holds replication count, master seed, evaluation grid, dt and horizon.
Validation errors name the offending field.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .degradation import DegradationParams
from .errors import ConfigError
from .kernel import GammaLaw, NormalLaw
from .shocks import ShockParams
from .simulate import ModelParams, Numerics


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    points: int

    def times(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class RunSettings:
    n_reps: int
    master_seed: int
    grid: GridSpec
    dt: float
    horizon: float


@dataclass(frozen=True)
class OutputSettings:
    path: str
    format: str = "csv"


@dataclass(frozen=True)
class RunConfig:
    model: ModelParams
    run: RunSettings
    output: OutputSettings


def _section(doc: dict, key: str) -> dict:
    if key not in doc:
        raise ConfigError(f"missing section {key!r}")
    if not isinstance(doc[key], dict):
        raise ConfigError(f"{key}: expected an object")
    return doc[key]


def _number(d: dict, path: str, key: str) -> float:
    if key not in d:
        raise ConfigError(f"missing field {path}.{key}")
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{path}.{key}: expected a number, got {type(v).__name__}")
    if not math.isfinite(v):
        raise ConfigError(f"{path}.{key}: must be finite, got {v}")
    return float(v)


def _integer(d: dict, path: str, key: str) -> int:
    if key not in d:
        raise ConfigError(f"missing field {path}.{key}")
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{path}.{key}: expected an integer, got {type(v).__name__}")
    return v


def _law(d: dict, path: str, key: str) -> NormalLaw:
    if key not in d:
        raise ConfigError(f"missing field {path}.{key}")
    sub = d[key]
    if not isinstance(sub, dict):
        raise ConfigError(f"{path}.{key}: expected an object with mean/stdev")
    mean = _number(sub, f"{path}.{key}", "mean")
    stdev = _number(sub, f"{path}.{key}", "stdev")
    if stdev <= 0.0:
        raise ConfigError(f"{path}.{key}.stdev must be > 0, got {stdev}")
    return NormalLaw(mean, stdev)


def parse_config(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("top level must be an object")
    model = _section(doc, "model")
    run = _section(doc, "run")
    output = _section(doc, "output")

    h = _number(model, "model", "H")
    d1 = _number(model, "model", "D1")
    d0 = _number(model, "model", "D0")
    alpha1 = _number(model, "model", "alpha1")
    alpha2 = _number(model, "model", "alpha2")
    beta = _number(model, "model", "beta")
    lambda0 = _number(model, "model", "lambda0")
    eta = _number(model, "model", "eta")
    gamma = _number(model, "model", "gamma")
    w_law = _law(model, "model", "W")
    y_law = _law(model, "model", "Y")
    theta_law = None
    if model.get("theta") is not None:
        sub = model["theta"]
        if not isinstance(sub, dict):
            raise ConfigError("model.theta: expected an object with shape/rate")
        shape = _number(sub, "model.theta", "shape")
        rate = _number(sub, "model.theta", "rate")
        if shape <= 0.0 or rate <= 0.0:
            raise ConfigError("model.theta shape and rate must be > 0")
        theta_law = GammaLaw(shape, rate)

    for name, v in (("H", h), ("alpha1", alpha1), ("alpha2", alpha2), ("beta", beta)):
        if v <= 0.0:
            raise ConfigError(f"model.{name} must be > 0, got {v}")
    if lambda0 < 0.0:
        raise ConfigError(f"model.lambda0 must be >= 0, got {lambda0}")
    if gamma < 0.0:
        raise ConfigError(f"model.gamma must be >= 0, got {gamma}")
    if eta <= 0.0:
        raise ConfigError(f"model.eta must be > 0, got {eta}")
    if d0 > d1:
        raise ConfigError(f"model.D0 ({d0}) must not exceed model.D1 ({d1})")

    n_reps = _integer(run, "run", "n_reps")
    if n_reps < 1:
        raise ConfigError(f"run.n_reps must be >= 1, got {n_reps}")
    master_seed = _integer(run, "run", "master_seed")
    if master_seed < 0:
        raise ConfigError(f"run.master_seed must be >= 0, got {master_seed}")
    dt = _number(run, "run", "dt")
    if dt <= 0.0:
        raise ConfigError(f"run.dt must be > 0, got {dt}")
    horizon = _number(run, "run", "horizon")
    if horizon <= 0.0:
        raise ConfigError(f"run.horizon must be > 0, got {horizon}")

    grid_doc = run.get("grid")
    if not isinstance(grid_doc, dict):
        raise ConfigError("missing field run.grid (object with start/stop/points)")
    start = _number(grid_doc, "run.grid", "start")
    stop = _number(grid_doc, "run.grid", "stop")
    points = _integer(grid_doc, "run.grid", "points")
    if points < 1:
        raise ConfigError(f"run.grid.points must be >= 1, got {points}")
    if start < 0.0 or stop < start:
        raise ConfigError(f"run.grid must satisfy 0 <= start <= stop, got [{start}, {stop}]")
    if stop > horizon:
        raise ConfigError(f"run.grid.stop ({stop}) must not exceed run.horizon ({horizon})")

    out_path = output.get("path")
    if not isinstance(out_path, str) or not out_path:
        raise ConfigError("output.path: expected a non-empty string")
    out_format = output.get("format", "csv")
    if out_format != "csv":
        raise ConfigError(f"output.format: only 'csv' is supported, got {out_format!r}")

    degradation = DegradationParams(
        alpha1=alpha1, alpha2=alpha2, beta=beta,
        jump_law=y_law, soft_threshold=h, theta_law=theta_law,
    )
    shock = ShockParams(
        lambda0=lambda0, gamma_dep=gamma, eta=eta,
        magnitude_law=w_law, damage_threshold=d0, hard_threshold=d1,
    )
    numerics = Numerics(dt=dt, horizon=horizon)
    return RunConfig(
        model=ModelParams(degradation=degradation, shock=shock, numerics=numerics),
        run=RunSettings(n_reps=n_reps, master_seed=master_seed,
                        grid=GridSpec(start, stop, points), dt=dt, horizon=horizon),
        output=OutputSettings(path=out_path, format=out_format),
    )


def load_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return parse_config(doc)


def config_to_dict(cfg: RunConfig) -> dict:
    deg = cfg.model.degradation
    shk = cfg.model.shock
    model = {
        "H": deg.soft_threshold,
        "D1": shk.hard_threshold,
        "D0": shk.damage_threshold,
        "alpha1": deg.alpha1,
        "alpha2": deg.alpha2,
        "beta": deg.beta,
        "lambda0": shk.lambda0,
        "eta": shk.eta,
        "gamma": shk.gamma_dep,
        "W": {"mean": shk.magnitude_law.mean, "stdev": shk.magnitude_law.stdev},
        "Y": {"mean": deg.jump_law.mean, "stdev": deg.jump_law.stdev},
    }
    if deg.theta_law is not None:
        model["theta"] = {"shape": deg.theta_law.shape, "rate": deg.theta_law.rate}
    return {
        "model": model,
        "run": {
            "n_reps": cfg.run.n_reps,
            "master_seed": cfg.run.master_seed,
            "grid": {"start": cfg.run.grid.start, "stop": cfg.run.grid.stop,
                     "points": cfg.run.grid.points},
            "dt": cfg.run.dt,
            "horizon": cfg.run.horizon,
        },
        "output": {"path": cfg.output.path, "format": cfg.output.format},
    }


def dump_config(cfg: RunConfig) -> str:
    return json.dumps(config_to_dict(cfg), indent=2, sort_keys=False) + "\n"
