"""Erlang-B traffic engineering and the E1 capacity table."""

from .capacity import (
    CAPACITY_TOL,
    CapacityEntry,
    CapacityTable,
    TimeslotSchedule,
    build_capacity_table,
    capacity_limit,
    cumulative_channels,
)
from .erlang import (
    DEFAULT_GOS,
    GoS,
    as_gos,
    erlang_b,
    erlang_b_curve,
    offered_traffic,
    offered_traffic_many,
    required_channels,
)

__all__ = [
    "CAPACITY_TOL",
    "CapacityEntry",
    "CapacityTable",
    "TimeslotSchedule",
    "build_capacity_table",
    "capacity_limit",
    "cumulative_channels",
    "DEFAULT_GOS",
    "GoS",
    "as_gos",
    "erlang_b",
    "erlang_b_curve",
    "offered_traffic",
    "offered_traffic_many",
    "required_channels",
]
