import logging
import time

from src.commands.config import RunConfig
from src.commands.parser import EXIT_IO, EXIT_OK
from src.models.sweep import SWEEP_HEADER, SweepAxis
from src.physics.sweep import (
    classical_crossover_size,
    linear_fit_t_vs_inverse_hopping,
    linear_fit_t_vs_N,
    scan,
)
from src.utils.file_io import write_csv_rows, write_json
from src.utils.helpers import display_banner, format_number
from src.utils.metadata import build_sidecar, sidecar_path

logger = logging.getLogger(__name__)


def _size_summary(result) -> dict:
    """Linear t_opt(N) fits and the classical crossover, for size sweeps of 3+ points."""
    if result.spec.axis is not SweepAxis.SYSTEM_SIZE or len(result.points) < 3:
        return {}
    summary = {}
    for channel in ("atom", "photon"):
        fit = linear_fit_t_vs_N(result, channel)
        summary[channel] = {
            "slope": fit.slope,
            "intercept": fit.intercept,
            "normalized_rms": fit.residual,
            "classical_crossover_n": classical_crossover_size(result, channel)
        }
    return summary


def _hopping_summary(result) -> dict:
    """Linear t_opt(1/xi) fits, for hopping sweeps of 3+ points."""
    if result.spec.axis is not SweepAxis.HOPPING or len(result.points) < 3:
        return {}
    summary = {}
    for channel in ("atom", "photon"):
        fit = linear_fit_t_vs_inverse_hopping(result, channel)
        summary[channel] = {"slope": fit.slope, "intercept": fit.intercept, "normalized_rms": fit.residual}
    return summary


def cmd_sweep(config: RunConfig) -> int:
    spec = config.sweep
    started = time.perf_counter()
    result = scan(spec, workers=config.workers)
    wall_time = time.perf_counter() - started

    if config.fmt == "json":
        written = write_json(config.output, result.to_dict())
    else:
        written = write_csv_rows(config.output, SWEEP_HEADER, result.to_rows())
    if not written:
        print(f"❌ Could not write {config.output}")
        return EXIT_IO

    summary = _size_summary(result)
    hopping_summary = _hopping_summary(result)
    grid = {
        "time_window": list(spec.time_window) if spec.time_window else "[0, 2N/xi] per point",
        "grid_points": spec.grid_points,
        "refine_tolerance": spec.refine_tolerance if spec.refine_tolerance is not None else "1e-4/xi"
    }
    extra = {
        "preset": config.preset,
        "workers": config.workers,
        "point_wall_times": [p.wall_time for p in result.points],
        "size_fit": summary,
        "inverse_hopping_fit": hopping_summary
    }
    meta = build_sidecar("sweep", wall_time, spec.to_dict(), grid, extra)
    if not write_json(sidecar_path(config.output), meta):
        print(f"❌ Could not write {sidecar_path(config.output)}")
        return EXIT_IO

    lines = [
        f"{spec.axis.value} = {format_number(p.axis_value, 6)}: "
        f"atom {format_number(p.atom.probability)} at t={format_number(p.atom.time, 6)}, "
        f"photon {format_number(p.photon.probability)} at t={format_number(p.photon.time, 6)}"
        for p in result.points
    ]
    for channel, fit in summary.items():
        lines.append(f"{channel}: t_opt ~ {format_number(fit['slope'])} N + {format_number(fit['intercept'])} "
                     f"(rms {fit['normalized_rms']:.2e})")
    for channel, fit in hopping_summary.items():
        lines.append(f"{channel}: t_opt ~ {format_number(fit['slope'])} /xi + {format_number(fit['intercept'])} "
                     f"(rms {fit['normalized_rms']:.2e})")
    display_banner(f"Sweep over {spec.axis.value}", lines)
    print(f"✅ Sweep written to {config.output}")
    return EXIT_OK
