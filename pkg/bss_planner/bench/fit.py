"""Exponential regression of solve times against instance size."""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np
import pandas as pd

from bss_planner.exceptions import TrafficDomainError


@dataclass(frozen=True)
class ExpFit:
    """y = coef_a * exp(coef_b * x)."""

    coef_a: float
    coef_b: float

    def __post_init__(self):
        if not self.coef_a > 0:
            raise TrafficDomainError(f"coef_a must be > 0, got {self.coef_a}")

    def predict(self, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        return self.coef_a * np.exp(self.coef_b * np.asarray(x, dtype=float))

    def __str__(self) -> str:
        return f"y = {self.coef_a:.6f} * exp({self.coef_b:.6f} * x)"


def fit_exponential(points: Sequence[Tuple[float, float]]) -> ExpFit:
    """
    Least-squares fit of ln y = ln a + b x.

    Args:
        points: (x, y) pairs, at least two, every y > 0

    Raises:
        TrafficDomainError: On fewer than two points, a non-positive y, or
            when every x is the same

    Example:
        >>> fit = fit_exponential([(0, 2.0), (1, 2.0 * math.e)])
        >>> round(fit.coef_a, 9), round(fit.coef_b, 9)
        (2.0, 1.0)
    """
    if len(points) < 2:
        raise TrafficDomainError("Exponential fit needs at least two points")
    x = np.array([float(p[0]) for p in points])
    y = np.array([float(p[1]) for p in points])
    if not np.all(np.isfinite(x)) or not np.all(np.isfinite(y)):
        raise TrafficDomainError("Fit points must be finite")
    if np.any(y <= 0):
        raise TrafficDomainError("Exponential fit needs y > 0 for every point")
    if np.ptp(x) == 0:
        raise TrafficDomainError("Exponential fit needs at least two distinct x values")
    slope, intercept = np.polyfit(x, np.log(y), 1)
    return ExpFit(coef_a=math.exp(intercept), coef_b=float(slope))


def fit_bench_csv(path: Union[str, Path], x_col: str = "bts", y_col: str = "avg_time_s") -> ExpFit:
    """Fit the average times of a bench CSV against its BTS counts."""
    frame = pd.read_csv(path)
    missing = {x_col, y_col} - set(frame.columns)
    if missing:
        raise TrafficDomainError(f"{path} lacks column(s) {sorted(missing)}")
    return fit_exponential(list(zip(frame[x_col], frame[y_col])))
