"""Environment-driven settings for the BSS planner.

Values come from the process environment (a ``.env`` file is loaded on import)
and can be overridden by explicit keyword arguments.
"""

import os
from dataclasses import dataclass, fields, replace
from typing import Any, Callable, Optional, Tuple

from dotenv import load_dotenv

from bss_planner.exceptions import ConfigurationError

load_dotenv()


def _parse_costs(raw: str) -> Tuple[float, ...]:
    return tuple(float(part) for part in raw.split(",") if part.strip())


def _read(name: str, default: Any, cast: Callable[[str], Any]) -> Any:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except ValueError as e:
        raise ConfigurationError(f"Invalid value for {name}: {raw!r} ({e})")


@dataclass(frozen=True)
class Settings:
    """
    Runtime configuration.

    Attributes:
        gos: Target grade of service for the capacity table
        max_lines: Number of E1 lines covered by the capacity table
        sub_timeslots: Compressed voice channels per voice timeslot
        first_line_voice_ts: Voice timeslots on the first E1 line
        other_line_voice_ts: Voice timeslots on every further E1 line
        area_km: Side of the square used by the instance generator
        traffic_max_erl: Upper bound of generated BTS traffic
        abis_rate: Cost per km per E1 on BTS-BSC links
        a_rate: Cost per km per E1 on BSC-MSC trunks
        line_fixed_cost: Terminal equipment cost per E1 line
        model_costs: Acquisition costs of the small, medium and large BSC models
        time_limit: Exact solver time limit in seconds
        enum_cap: Largest assignment count the brute-force oracle will enumerate
        lagrange_iterations: Subgradient iterations for the Lagrangian bound
        lagrange_mu0: Initial subgradient step
        local_search_rounds: Round cap for local search
        log_level: Root log level used by the CLI
        db_url: SQLAlchemy URL for benchmark storage (optional)
    """

    gos: float = 0.02
    max_lines: int = 40
    sub_timeslots: int = 4
    first_line_voice_ts: int = 29
    other_line_voice_ts: int = 31
    area_km: float = 100.0
    traffic_max_erl: float = 80.0
    abis_rate: float = 10.0
    a_rate: float = 10.0
    line_fixed_cost: float = 0.0
    model_costs: Tuple[float, ...] = (1000.0, 3000.0, 5000.0)
    time_limit: float = 300.0
    enum_cap: int = 10_000_000
    lagrange_iterations: int = 200
    lagrange_mu0: float = 1.0
    local_search_rounds: int = 50
    log_level: str = "WARNING"
    db_url: Optional[str] = None

    def __post_init__(self):
        if not 0.0 < self.gos < 1.0:
            raise ConfigurationError(f"BSS_GOS must lie in (0, 1), got {self.gos}")
        if self.max_lines < 0:
            raise ConfigurationError("BSS_MAX_LINES must be >= 0")
        if self.sub_timeslots < 1:
            raise ConfigurationError("BSS_SUB_TIMESLOTS must be >= 1")
        for name in ("first_line_voice_ts", "other_line_voice_ts"):
            value = getattr(self, name)
            if not 0 <= value <= 31:
                raise ConfigurationError(f"{name} must lie in [0, 31], got {value}")
        if len(self.model_costs) != 3 or any(c < 0 for c in self.model_costs):
            raise ConfigurationError("BSS_MODEL_COSTS needs three non-negative costs")
        if self.time_limit <= 0 or self.enum_cap < 1:
            raise ConfigurationError("BSS_TIME_LIMIT and BSS_ENUM_CAP must be positive")
        if self.lagrange_iterations < 1 or self.local_search_rounds < 0:
            raise ConfigurationError("Iteration counts must be positive")

    @classmethod
    def from_env(cls, **overrides: Any) -> "Settings":
        """
        Build settings from ``BSS_*`` environment variables.

        Args:
            **overrides: Field values that take precedence over the environment

        Returns:
            Validated Settings instance

        Raises:
            ConfigurationError: If a variable cannot be parsed or is out of range
        """
        defaults = {f.name: f.default for f in fields(cls)}
        values = {
            "gos": _read("BSS_GOS", defaults["gos"], float),
            "max_lines": _read("BSS_MAX_LINES", defaults["max_lines"], int),
            "sub_timeslots": _read("BSS_SUB_TIMESLOTS", defaults["sub_timeslots"], int),
            "first_line_voice_ts": _read(
                "BSS_FIRST_LINE_VOICE_TS", defaults["first_line_voice_ts"], int
            ),
            "other_line_voice_ts": _read(
                "BSS_OTHER_LINE_VOICE_TS", defaults["other_line_voice_ts"], int
            ),
            "area_km": _read("BSS_AREA_KM", defaults["area_km"], float),
            "traffic_max_erl": _read("BSS_TRAFFIC_MAX_ERL", defaults["traffic_max_erl"], float),
            "abis_rate": _read("BSS_ABIS_RATE", defaults["abis_rate"], float),
            "a_rate": _read("BSS_A_RATE", defaults["a_rate"], float),
            "line_fixed_cost": _read("BSS_LINE_FIXED_COST", defaults["line_fixed_cost"], float),
            "model_costs": _read("BSS_MODEL_COSTS", defaults["model_costs"], _parse_costs),
            "time_limit": _read("BSS_TIME_LIMIT", defaults["time_limit"], float),
            "enum_cap": _read("BSS_ENUM_CAP", defaults["enum_cap"], int),
            "lagrange_iterations": _read(
                "BSS_LAGRANGE_ITERATIONS", defaults["lagrange_iterations"], int
            ),
            "lagrange_mu0": _read("BSS_LAGRANGE_MU0", defaults["lagrange_mu0"], float),
            "local_search_rounds": _read(
                "BSS_LOCAL_SEARCH_ROUNDS", defaults["local_search_rounds"], int
            ),
            "log_level": _read("BSS_LOG_LEVEL", defaults["log_level"], str).upper(),
            "db_url": os.getenv("DB_URL") or None,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_overrides(self, **overrides: Any) -> "Settings":
        """Return a copy with the non-None overrides applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})
