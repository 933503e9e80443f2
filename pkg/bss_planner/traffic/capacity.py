"""E1 capacity table: carried traffic per number of BSC-MSC E1 lines."""

from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import List, Optional, Sequence, Tuple

from bss_planner.exceptions import ConfigurationError
from bss_planner.traffic.erlang import GoS, GoSLike, as_gos, offered_traffic_many

E1_TIMESLOTS = 31
DEFAULT_SUB_TIMESLOTS = 4
DEFAULT_FIRST_LINE_VOICE_TS = 29
DEFAULT_OTHER_LINE_VOICE_TS = 31

# Loads up to this far past a capacity still fit; absorbs summation-order rounding.
CAPACITY_TOL = 1e-9


def capacity_limit(capacity: float) -> float:
    """Largest traffic accepted against ``capacity``."""
    return capacity * (1 + CAPACITY_TOL) + CAPACITY_TOL


@dataclass(frozen=True)
class TimeslotSchedule:
    """Voice timeslots carried by each successive E1 line."""

    voice_ts_per_line: Tuple[int, ...]
    sub_timeslots_per_ts: int = DEFAULT_SUB_TIMESLOTS

    def __post_init__(self):
        object.__setattr__(self, "voice_ts_per_line", tuple(self.voice_ts_per_line))
        for idx, ts in enumerate(self.voice_ts_per_line):
            if isinstance(ts, bool) or not isinstance(ts, int) or not 0 <= ts <= E1_TIMESLOTS:
                raise ConfigurationError(
                    f"Line {idx + 1} has {ts!r} voice timeslots; expected 0..{E1_TIMESLOTS}"
                )
        if self.sub_timeslots_per_ts < 1:
            raise ConfigurationError("sub_timeslots_per_ts must be >= 1")

    @classmethod
    def default(
        cls,
        lines: int,
        first_line: int = DEFAULT_FIRST_LINE_VOICE_TS,
        other_lines: int = DEFAULT_OTHER_LINE_VOICE_TS,
        sub_timeslots_per_ts: int = DEFAULT_SUB_TIMESLOTS,
    ) -> "TimeslotSchedule":
        """First line keeps two timeslots for signalling and data; the rest are all voice."""
        per_line = [first_line] + [other_lines] * max(lines - 1, 0) if lines > 0 else []
        return cls(tuple(per_line), sub_timeslots_per_ts)

    def __len__(self) -> int:
        return len(self.voice_ts_per_line)


@dataclass(frozen=True)
class CapacityEntry:
    lines: int
    channels: int
    capacity_erl: float


@dataclass(frozen=True)
class CapacityTable:
    """
    Carried traffic per E1 line count at a fixed GoS.

    Entry ``k`` describes ``k`` lines; entry 0 is always (0, 0, 0.0).
    """

    gos: GoS
    schedule: TimeslotSchedule
    entries: Tuple[CapacityEntry, ...]

    @property
    def max_lines(self) -> int:
        return len(self.entries) - 1

    @property
    def max_capacity(self) -> float:
        return self.entries[-1].capacity_erl

    @cached_property
    def capacities(self) -> List[float]:
        return [e.capacity_erl for e in self.entries]

    @cached_property
    def limits(self) -> List[float]:
        return [capacity_limit(c) for c in self.capacities]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, lines: int) -> CapacityEntry:
        return self.entries[lines]

    def lines_for(self, traffic: float) -> Optional[int]:
        """
        Smallest line count whose capacity covers ``traffic``, or None if none does.

        Positive traffic always needs at least one line.
        """
        if traffic <= 0:
            return 0
        k = bisect_left(self.limits, traffic, lo=1)
        return k if k < len(self.entries) else None


def cumulative_channels(schedule: TimeslotSchedule, max_lines: int) -> List[int]:
    """Voice channels available over lines 1..k, for k = 0..max_lines."""
    if max_lines > len(schedule):
        raise ConfigurationError(
            f"Timeslot schedule covers {len(schedule)} lines but {max_lines} are required"
        )
    channels = [0]
    total_ts = 0
    for ts in schedule.voice_ts_per_line[:max_lines]:
        total_ts += ts
        channels.append(schedule.sub_timeslots_per_ts * total_ts)
    return channels


@lru_cache(maxsize=64)
def _build(max_lines: int, schedule: TimeslotSchedule, gos: GoS) -> CapacityTable:
    channels = cumulative_channels(schedule, max_lines)
    carried = offered_traffic_many(channels, gos)
    entries = tuple(
        CapacityEntry(lines=k, channels=ch, capacity_erl=float(carried[k]))
        for k, ch in enumerate(channels)
    )
    return CapacityTable(gos=gos, schedule=schedule, entries=entries)


def build_capacity_table(
    max_lines: int, schedule: Optional[TimeslotSchedule] = None, gos: GoSLike = 0.02
) -> CapacityTable:
    """
    Build the capacity table by the reverse Erlang-B formula.

    Args:
        max_lines: Largest E1 line count in the table
        schedule: Voice timeslots per line (default: 29 then 31 per line)
        gos: Target grade of service

    Returns:
        CapacityTable with ``max_lines + 1`` entries

    Raises:
        ConfigurationError: If the schedule covers fewer than ``max_lines`` lines

    Example:
        >>> table = build_capacity_table(40)
        >>> len(table)
        41
    """
    if max_lines < 0:
        raise ConfigurationError("max_lines must be >= 0")
    if schedule is None:
        schedule = TimeslotSchedule.default(max_lines)
    return _build(int(max_lines), schedule, as_gos(gos))
