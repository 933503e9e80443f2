"""Erlang-B blocking probability and its inverses.

All functions use the stable recurrence E(0) = 1, E(k) = a E(k-1) / (k + a E(k-1)),
which never forms a^n or n! and stays accurate for thousands of channels.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from bss_planner.exceptions import TrafficDomainError

DEFAULT_GOS = 0.02
OFFERED_TRAFFIC_TOL = 1e-6


@dataclass(frozen=True)
class GoS:
    """Target blocking probability, strictly between 0 and 1."""

    value: float = DEFAULT_GOS

    def __post_init__(self):
        if not (isinstance(self.value, (int, float)) and 0.0 < self.value < 1.0):
            raise TrafficDomainError(f"GoS must lie in (0, 1), got {self.value!r}")


GoSLike = Union[GoS, float]


def as_gos(gos: GoSLike) -> GoS:
    """Accept a GoS or a bare float."""
    return gos if isinstance(gos, GoS) else GoS(float(gos))


def _check_channels(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise TrafficDomainError(f"Channel count must be a non-negative integer, got {n!r}")


def _check_traffic(a: float) -> None:
    if not isinstance(a, (int, float, np.floating)) or math.isnan(a) or a < 0:
        raise TrafficDomainError(f"Offered traffic must be >= 0 Erlang, got {a!r}")


def erlang_b(n: int, a: float) -> float:
    """
    Blocking probability of ``n`` channels offered ``a`` Erlangs.

    Args:
        n: Number of channels (non-negative integer)
        a: Offered traffic in Erlangs (non-negative)

    Returns:
        E(n, a) in [0, 1]; E(0, a) = 1 and E(n, 0) = 0 for n >= 1

    Raises:
        TrafficDomainError: On negative or non-numeric inputs

    Example:
        >>> erlang_b(2, 1.0)
        0.2
    """
    _check_channels(n)
    _check_traffic(a)
    e = 1.0
    for k in range(1, int(n) + 1):
        e = a * e / (k + a * e)
    return e


def erlang_b_curve(a: float, n_max: int) -> np.ndarray:
    """Return E(k, a) for k = 0..n_max from a single recurrence pass."""
    _check_channels(n_max)
    _check_traffic(a)
    curve = np.empty(int(n_max) + 1, dtype=float)
    e = 1.0
    curve[0] = e
    for k in range(1, int(n_max) + 1):
        e = a * e / (k + a * e)
        curve[k] = e
    return curve


def _erlang_b_vec(n: np.ndarray, a: np.ndarray) -> np.ndarray:
    # Element i runs the recurrence up to n[i]; shorter rows stop updating.
    e = np.ones_like(a, dtype=float)
    for k in range(1, int(n.max()) + 1):
        step = a * e / (k + a * e)
        e = np.where(k <= n, step, e)
    return e


def offered_traffic(n: int, gos: GoSLike = DEFAULT_GOS) -> float:
    """
    Traffic that ``n`` channels carry at the target grade of service.

    Solves erlang_b(n, a) = gos for ``a`` by bisection. The returned value is
    the lower end of the final bracket, so erlang_b(n, result) <= gos always
    holds and the error is at most 1e-6 Erlang.

    Args:
        n: Number of channels; n = 0 returns 0 by convention
        gos: Target grade of service

    Returns:
        Offered traffic in Erlangs

    Example:
        >>> round(offered_traffic(1, 0.5), 6)
        1.0
    """
    _check_channels(n)
    target = as_gos(gos).value
    if n == 0:
        return 0.0
    lo, hi = 0.0, float(max(n, 1))
    while erlang_b(n, hi) <= target:
        lo, hi = hi, hi * 2.0
    while hi - lo > OFFERED_TRAFFIC_TOL:
        mid = 0.5 * (lo + hi)
        if erlang_b(n, mid) <= target:
            lo = mid
        else:
            hi = mid
    return lo


def offered_traffic_many(ns: Iterable[int], gos: GoSLike = DEFAULT_GOS) -> np.ndarray:
    """
    Vectorized :func:`offered_traffic` over many channel counts.

    Runs the same bisection with the same tolerance for every entry at once,
    so each element equals the scalar result.
    """
    target = as_gos(gos).value
    counts = np.asarray(list(ns), dtype=np.int64)
    if counts.size and counts.min() < 0:
        raise TrafficDomainError("Channel counts must be non-negative")
    result = np.zeros(counts.shape, dtype=float)
    positive = counts > 0
    if not positive.any():
        return result

    n = counts[positive]
    lo = np.zeros(n.shape, dtype=float)
    hi = n.astype(float)
    while True:
        carried = _erlang_b_vec(n, hi) <= target
        if not carried.any():
            break
        lo = np.where(carried, hi, lo)
        hi = np.where(carried, hi * 2.0, hi)
    active = hi - lo > OFFERED_TRAFFIC_TOL
    while active.any():
        mid = 0.5 * (lo + hi)
        ok = _erlang_b_vec(n, mid) <= target
        lo = np.where(active & ok, mid, lo)
        hi = np.where(active & ~ok, mid, hi)
        active = hi - lo > OFFERED_TRAFFIC_TOL

    result[positive] = lo
    return result


def required_channels(a: float, gos: GoSLike = DEFAULT_GOS) -> int:
    """
    Smallest channel count whose blocking at ``a`` Erlangs meets the GoS.

    Zero traffic needs zero channels.

    Example:
        >>> required_channels(1.0, 0.2)
        2
    """
    _check_traffic(a)
    target = as_gos(gos).value
    if a == 0:
        return 0
    n = 0
    e = 1.0
    while e > target:
        n += 1
        e = a * e / (n + a * e)
    return n
