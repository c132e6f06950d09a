"""
Maximization of a probability curve over a time window:
coarse grid scan, then golden-section refinement around the best grid point.
"""
import math
from typing import Callable, Tuple

import numpy as np

from src.utils.errors import DomainError

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARED = (3 - math.sqrt(5)) / 2  # 1 / phi^2


def golden_section_maximize(func: Callable[[float], float], a: float, b: float, tol: float = 1e-5) -> Tuple[float, float]:
    """
    Given f with a single local maximum in [a, b], return a sub-interval [c, d]
    containing it with d - c <= tol. Function evaluations are reused.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        return a, b

    # Required steps to achieve tolerance
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARED * h
    d = a + INV_PHI * h
    yc = func(c)
    yd = func(d)

    for _ in range(n - 1):
        if yc > yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARED * h
            yc = func(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = func(d)

    if yc > yd:
        return a, d
    return c, b


def maximize_on_window(
        curve: Callable[[np.ndarray], np.ndarray],
        window: Tuple[float, float],
        grid_points: int,
        tolerance: float) -> Tuple[float, float]:
    """
    curve maps a time array to values. Returns (t*, value*).
    Ties on the grid go to the earliest point; the refined value never falls
    below the best grid value.
    """
    start, stop = (float(x) for x in window)
    if not (math.isfinite(start) and math.isfinite(stop)) or stop <= start or start < 0:
        raise DomainError(f"time window must satisfy 0 <= start < stop, got {window}")
    if grid_points < 2:
        raise DomainError(f"grid_points must be >= 2, got {grid_points}")
    if tolerance <= 0:
        raise DomainError("refinement tolerance must be positive")

    grid = np.linspace(start, stop, grid_points)
    values = np.asarray(curve(grid), dtype=float)
    best = int(np.argmax(values))
    best_time, best_value = float(grid[best]), float(values[best])

    lower = grid[max(best - 1, 0)]
    upper = grid[min(best + 1, grid_points - 1)]

    def scalar(t: float) -> float:
        return float(curve(np.array([t]))[0])

    c, d = golden_section_maximize(scalar, lower, upper, tolerance)
    refined_time = 0.5 * (c + d)
    refined_value = scalar(refined_time)
    if refined_value > best_value:
        return float(refined_time), refined_value
    return best_time, best_value
