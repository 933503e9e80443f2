"""BSS planner - placement and sizing of BSCs in GSM base station subsystems."""

__version__ = "0.1.0"

__all__ = ["BssPlanner"]


def __getattr__(name):
    # utils.settings imports bss_planner.exceptions, so the facade loads lazily.
    if name == "BssPlanner":
        from bss_planner.planner import BssPlanner

        return BssPlanner
    raise AttributeError(f"module 'bss_planner' has no attribute {name!r}")
