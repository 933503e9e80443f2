"""Exception hierarchy for the BSS planner."""

from typing import Any, List, Optional


class PlannerError(Exception):
    """Root of every error raised by bss_planner."""


class ConfigurationError(PlannerError, ValueError):
    """A setting, schedule or step rule is invalid."""


class TrafficDomainError(PlannerError, ValueError):
    """An Erlang-B or regression input is outside its domain."""


class InstanceError(PlannerError, ValueError):
    """An instance is structurally invalid or a file could not be parsed."""


class InfeasibleInstanceError(InstanceError):
    """The instance can never be completed (demand above every model or table)."""


class InfeasibleAssignmentError(PlannerError):
    """A BSC's accumulated traffic cannot be covered by any line count and model."""

    def __init__(self, bsc_id: int, traffic: float, reason: str = ""):
        self.bsc_id = bsc_id
        self.traffic = traffic
        message = f"BSC {bsc_id} cannot carry {traffic:.6f} Erl"
        if reason:
            message = f"{message}: {reason}"
        super().__init__(message)


class InfeasibleSolutionError(PlannerError, ValueError):
    """A solution handed to an improvement step violates the model."""

    def __init__(self, violations: List[Any], message: Optional[str] = None):
        self.violations = violations
        super().__init__(message or f"Solution has {len(violations)} violation(s)")


class EnumerationLimitError(PlannerError):
    """Brute-force enumeration would exceed the configured cap."""

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"{size} assignments exceed the enumeration cap of {cap}")
