"""
Resolution of command-line flags and named presets into validated run settings.
Explicit flags win over preset values; presets win over built-in defaults.
"""
import argparse
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from src.models.params import HoppingPattern, PatternKind, SystemParams
from src.models.sweep import SweepAxis, SweepSpec
from src.physics.dynamics import DEFAULT_GRID_POINTS, default_window
from src.utils.errors import DomainError
from src.utils.file_io import read_json
from src.utils.helpers import parse_angle, parse_values

SCENARIO_PRESETS = "data/presets/scenarios.json"
SWEEP_PRESETS = "data/presets/sweeps.json"

# preset key -> argparse attribute
FLAG_KEYS = {
    "n": "n",
    "lambda": "coupling",
    "xi": "hopping",
    "delta": "detuning",
    "beta": "beta",
    "beta_deg": "beta_deg",
    "pattern": "pattern",
    "kappa": "kappa",
    "t_max": "t_max",
    "points": "points",
    "axis": "axis",
    "values": "values",
    "encoding_k": "encoding_k",
    "grid_points": "grid_points",
    "refine_tol": "refine_tol",
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: Optional[SystemParams] = None
    times: Optional[np.ndarray] = None
    sweep: Optional[SweepSpec] = None
    output: Optional[str] = None
    fmt: str = "csv"
    workers: Optional[int] = None
    preset: Optional[str] = None


def load_preset(catalog: str, name: Optional[str]) -> Dict[str, Any]:
    if name is None:
        return {}
    presets = read_json(catalog)
    if not isinstance(presets, dict) or name not in presets:
        known = ", ".join(sorted(presets)) if isinstance(presets, dict) and presets else "none"
        raise DomainError(f"unknown preset {name!r} (available: {known})")
    return dict(presets[name])


def collect_settings(args: argparse.Namespace, catalog: str) -> Dict[str, Any]:
    settings = load_preset(catalog, getattr(args, "preset", None))
    if getattr(args, "beta", None) is not None:
        settings.pop("beta_deg", None)
    if getattr(args, "beta_deg", None) is not None:
        settings.pop("beta", None)
    for key, attr in FLAG_KEYS.items():
        value = getattr(args, attr, None)
        if value is not None:
            settings[key] = value
    if getattr(args, "absolute_units", False):
        settings["absolute_units"] = True
    return settings


def _require(settings: Dict[str, Any], key: str, flag: str):
    if settings.get(key) is None:
        raise DomainError(f"missing {flag} (give the flag or a --preset that sets it)")
    return settings[key]


def resolve_params(settings: Dict[str, Any]) -> SystemParams:
    """
    lambda and delta are multiples of xi unless absolute_units is set.
    """
    n = _require(settings, "n", "--n")
    coupling = float(_require(settings, "lambda", "--lambda"))
    hopping = float(settings.get("xi", 1.0))
    detuning = float(settings.get("delta", 0.0))

    if settings.get("beta_deg") is not None:
        beta = math.radians(float(settings["beta_deg"]))
    else:
        beta = parse_angle(settings.get("beta", math.pi / 4))

    if not settings.get("absolute_units", False):
        if hopping == 0:
            raise DomainError("energies in units of xi need xi > 0 (use --absolute-units)")
        coupling *= hopping
        detuning *= hopping

    kappa = settings.get("kappa")
    kind = settings.get("pattern") or (PatternKind.STAGGERED.value if kappa is not None else PatternKind.UNIFORM.value)
    if PatternKind(kind) is PatternKind.STAGGERED:
        if kappa is None:
            raise DomainError("--pattern staggered needs --kappa")
        pattern = HoppingPattern.staggered(float(kappa))
    else:
        if kappa not in (None, 0, 0.0):
            raise DomainError("--kappa needs --pattern staggered")
        pattern = HoppingPattern.uniform()

    return SystemParams(n, coupling, hopping, detuning, beta, pattern)


def resolve_times(settings: Dict[str, Any], params: SystemParams) -> np.ndarray:
    points = settings.get("points")
    points = DEFAULT_GRID_POINTS if points is None else int(points)
    if points < 1:
        raise DomainError(f"--points must be positive, got {points}")
    if settings.get("t_max") is not None:
        t_max = float(settings["t_max"])
        if not t_max > 0:
            raise DomainError(f"--t-max must be positive, got {t_max}")
    else:
        _, t_max = default_window(params)
    return np.linspace(0.0, t_max, points)


def resolve_sweep(settings: Dict[str, Any]) -> SweepSpec:
    axis = SweepAxis(_require(settings, "axis", "--axis"))
    raw = _require(settings, "values", "--values")
    if isinstance(raw, (list, tuple)):
        raw = ",".join(str(v) for v in raw)
    values = parse_values(raw, integer=axis.is_integer)

    fixed_settings = dict(settings)
    if axis is SweepAxis.SYSTEM_SIZE and fixed_settings.get("n") is None:
        fixed_settings["n"] = values[0]
    if axis is SweepAxis.KAPPA:
        # the axis supplies kappa at every point
        fixed_settings["pattern"] = PatternKind.UNIFORM.value
        fixed_settings["kappa"] = None
    fixed = resolve_params(fixed_settings)

    t_max = settings.get("t_max")
    return SweepSpec(
        axis,
        tuple(values),
        fixed,
        time_window=(0.0, float(t_max)) if t_max is not None else None,
        grid_points=int(settings.get("grid_points", DEFAULT_GRID_POINTS)),
        refine_tolerance=settings.get("refine_tol"),
        encoding_k=settings.get("encoding_k")
    )


def build_config(args: argparse.Namespace) -> RunConfig:
    if args.command == "evolve":
        settings = collect_settings(args, SCENARIO_PRESETS)
        params = resolve_params(settings)
        return RunConfig(
            "evolve",
            params=params,
            times=resolve_times(settings, params),
            output=args.output or f"results/evolve.{args.fmt}",
            fmt=args.fmt,
            preset=args.preset
        )
    if args.command == "sweep":
        settings = collect_settings(args, SWEEP_PRESETS)
        spec = resolve_sweep(settings)
        return RunConfig(
            "sweep",
            params=spec.fixed,
            sweep=spec,
            output=args.output or f"results/sweep.{args.fmt}",
            fmt=args.fmt,
            workers=args.workers,
            preset=args.preset
        )
    raise DomainError(f"no run configuration for {args.command!r}")
