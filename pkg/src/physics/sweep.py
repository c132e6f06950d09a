"""
Parameter scans over end-site transfer maxima and optimal arrival times.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Tuple

import numpy as np

from src.models.encoding import EncodingScheme
from src.models.params import HoppingPattern, SystemParams
from src.models.sweep import LinearFit, Optimum, SweepAxis, SweepPoint, SweepResult, SweepSpec
from src.physics.dynamics import DEFAULT_GRID_POINTS, default_tolerance, default_window, site_populations
from src.physics.encoding import transfer_probabilities
from src.physics.search import maximize_on_window
from src.utils.errors import DomainError, SweepValueError

logger = logging.getLogger(__name__)

CLASSICAL_FIDELITY_LIMIT = 2.0 / 3.0
CHANNEL_INDEX = {"atom": 0, "photon": 1}


def _channel(channel: str) -> int:
    if channel not in CHANNEL_INDEX:
        raise DomainError(f"unknown channel {channel!r}")
    return CHANNEL_INDEX[channel]


def optimal_time(
        params: SystemParams,
        channel: str,
        time_window: Optional[Tuple[float, float]] = None,
        grid_points: int = DEFAULT_GRID_POINTS,
        refine_tolerance: Optional[float] = None,
        encoding: Optional[EncodingScheme] = None) -> Optimum:
    """
    Time t_o at which the end-site probability of a channel peaks, and the peak value.
    With an encoding scheme the probability is the decoded-window overlap instead.
    """
    index = _channel(channel)
    window = time_window if time_window is not None else default_window(params)
    tolerance = refine_tolerance if refine_tolerance is not None else default_tolerance(params)

    if encoding is not None:
        def curve(times):
            return transfer_probabilities(encoding, times)[index]
    else:
        def curve(times):
            return site_populations(params, params.n_cavities, times)[index]

    t_best, p_best = maximize_on_window(curve, window, grid_points, tolerance)
    return Optimum(t_best, p_best)


def point_params(spec: SweepSpec, value) -> Tuple[SystemParams, Optional[EncodingScheme]]:
    """Parameter set (and encoding) of one axis value."""
    fixed = spec.fixed
    try:
        if spec.axis is SweepAxis.SYSTEM_SIZE:
            params = fixed.with_changes(n_cavities=int(value))
        elif spec.axis is SweepAxis.BETA:
            params = fixed.with_changes(beta=float(value))
        elif spec.axis is SweepAxis.KAPPA:
            params = fixed.with_changes(pattern=HoppingPattern.staggered(float(value)))
        elif spec.axis is SweepAxis.HOPPING:
            params = fixed.with_changes(hopping=float(value))
        else:
            params = fixed

        if spec.axis is SweepAxis.ENCODING_K:
            encoding = EncodingScheme(int(value), params)
        elif spec.encoding_k is not None:
            encoding = EncodingScheme(spec.encoding_k, params)
        else:
            encoding = None

        if spec.time_window is None:
            default_window(params)
    except DomainError as error:
        raise SweepValueError(spec.axis.value, value, str(error)) from error
    return params, encoding


def _evaluate_point(job) -> SweepPoint:
    spec, value = job
    started = time.perf_counter()
    params, encoding = point_params(spec, value)
    window = spec.time_window
    optima = [
        optimal_time(params, channel, window, spec.grid_points, spec.refine_tolerance, encoding)
        for channel in ("atom", "photon")
    ]
    return SweepPoint(value, optima[0], optima[1], time.perf_counter() - started)


def scan(spec: SweepSpec, workers: Optional[int] = None) -> SweepResult:
    """
    One optimal_time record per axis value and channel, in axis order.
    workers > 1 evaluates points in a process pool.
    """
    # validate every point before spending time on any of them
    for value in spec.values:
        point_params(spec, value)

    jobs = [(spec, value) for value in spec.values]
    logger.info("scanning %s over %d values", spec.axis.value, len(jobs))
    if workers is not None and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as executor:
            points = list(executor.map(_evaluate_point, jobs))
    else:
        points = [_evaluate_point(job) for job in jobs]

    for point in points:
        logger.debug("%s=%s atom=%s photon=%s", spec.axis.value, point.axis_value, point.atom, point.photon)
    return SweepResult(tuple(points), spec)


def _least_squares(result: SweepResult, channel: str, abscissa) -> LinearFit:
    """t_opt = slope * x + intercept; residual is RMS / mean(t_opt)."""
    if len(result.points) < 3:
        raise DomainError(f"the linear fit needs at least 3 points, got {len(result.points)}")
    x = np.asarray(abscissa, dtype=float)
    times = np.array(result.series(channel, "time"))
    slope, intercept = np.polyfit(x, times, 1)
    residuals = times - (slope * x + intercept)
    rms = float(np.sqrt(np.mean(residuals ** 2)))
    return LinearFit(float(slope), float(intercept), rms / float(np.mean(np.abs(times))))


def linear_fit_t_vs_N(result: SweepResult, channel: str = "atom") -> LinearFit:
    """Arrival time against array size; t_opt ~ N / xi."""
    if result.spec.axis is not SweepAxis.SYSTEM_SIZE:
        raise DomainError("the linear fit needs a system-size sweep")
    return _least_squares(result, channel, result.axis_values)


def linear_fit_t_vs_inverse_hopping(result: SweepResult, channel: str = "atom") -> LinearFit:
    """Arrival time against 1/xi at fixed N; the slope grows with N."""
    if result.spec.axis is not SweepAxis.HOPPING:
        raise DomainError("the inverse-hopping fit needs a hopping sweep")
    return _least_squares(result, channel, 1.0 / np.array(result.axis_values, dtype=float))


def classical_crossover_size(result: SweepResult, channel: str = "atom") -> Optional[int]:
    """Largest N of a size sweep whose maximum still beats the classical limit 2/3."""
    if result.spec.axis is not SweepAxis.SYSTEM_SIZE:
        raise DomainError("the classical crossover needs a system-size sweep")
    above = [int(p.axis_value) for p in result.points if p.channel(channel).probability > CLASSICAL_FIDELITY_LIMIT]
    return max(above) if above else None
