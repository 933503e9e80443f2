"""Domain types of the BSS design model."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Mapping, Optional, Tuple

from bss_planner.exceptions import InfeasibleInstanceError, InstanceError
from bss_planner.traffic.capacity import CapacityTable


@dataclass(frozen=True)
class Site:
    """A planar location; coordinates in km."""

    id: int
    x: float
    y: float


@dataclass(frozen=True)
class BtsNode:
    """Demand node: a BTS with its offered traffic and Abis E1 count."""

    site: Site
    traffic_erl: float
    abis_lines: int = 1

    @property
    def id(self) -> int:
        return self.site.id


@dataclass(frozen=True)
class BscCandidate:
    """A site where a BSC may be installed."""

    site: Site

    @property
    def id(self) -> int:
        return self.site.id


@dataclass(frozen=True)
class BscModel:
    """A BSC product: traffic capacity and acquisition cost for the analysis period."""

    id: str
    capacity_erl: float
    acquisition_cost: float


@dataclass(frozen=True)
class CostRates:
    """
    Transmission tariffs for the analysis period.

    Attributes:
        abis_rate: Cost per km per E1 on BTS-BSC links
        a_rate: Cost per km per E1 on BSC-MSC trunks
        line_fixed_cost: Distance-independent equipment cost per E1 line
    """

    abis_rate: float
    a_rate: float
    line_fixed_cost: float = 0.0

    def __post_init__(self):
        if min(self.abis_rate, self.a_rate, self.line_fixed_cost) < 0:
            raise InstanceError("Cost rates must be non-negative")


def _unique_ids(kind: str, ids: Iterable) -> None:
    seen = set()
    for item_id in ids:
        if item_id in seen:
            raise InstanceError(f"Duplicate {kind} id {item_id!r}")
        seen.add(item_id)


@dataclass(frozen=True)
class Instance:
    """
    Full problem input. Collections are stored sorted by id.

    Raises:
        InstanceError: On empty sets, duplicate ids or invalid node data
        InfeasibleInstanceError: If some BTS demand exceeds every BSC model, or the
            capacity table cannot carry the largest model
    """

    msc: Site
    bts: Tuple[BtsNode, ...]
    bsc: Tuple[BscCandidate, ...]
    models: Tuple[BscModel, ...]
    capacity_table: CapacityTable
    rates: CostRates

    def __post_init__(self):
        object.__setattr__(self, "bts", tuple(sorted(self.bts, key=lambda b: b.id)))
        object.__setattr__(self, "bsc", tuple(sorted(self.bsc, key=lambda b: b.id)))
        object.__setattr__(self, "models", tuple(sorted(self.models, key=lambda m: m.id)))
        self._validate()

    def _validate(self) -> None:
        if not self.bts:
            raise InstanceError("Instance needs at least one BTS (|T| >= 1)")
        if not self.bsc:
            raise InstanceError("Instance needs at least one BSC candidate (|B| >= 1)")
        if not self.models:
            raise InstanceError("Instance needs at least one BSC model (|W| >= 1)")
        _unique_ids("BTS", (b.id for b in self.bts))
        _unique_ids("BSC", (b.id for b in self.bsc))
        _unique_ids("model", (m.id for m in self.models))
        for node in self.bts:
            if not node.traffic_erl >= 0:
                raise InstanceError(f"BTS {node.id} has negative traffic {node.traffic_erl}")
            if node.abis_lines < 1:
                raise InstanceError(f"BTS {node.id} needs abis_lines >= 1")
        for model in self.models:
            if not model.capacity_erl > 0:
                raise InstanceError(f"Model {model.id} needs capacity_erl > 0")
            if model.acquisition_cost < 0:
                raise InstanceError(f"Model {model.id} has negative acquisition cost")
        if self.capacity_table.max_capacity < self.max_model_capacity:
            raise InfeasibleInstanceError(
                f"Capacity table tops out at {self.capacity_table.max_capacity:.3f} Erl, "
                f"below the largest model ({self.max_model_capacity:.3f} Erl)"
            )
        for node in self.bts:
            if node.traffic_erl > self.max_model_capacity:
                raise InfeasibleInstanceError(
                    f"BTS {node.id} demands {node.traffic_erl} Erl, above every BSC model "
                    f"(max {self.max_model_capacity} Erl)"
                )

    @property
    def max_model_capacity(self) -> float:
        return max(m.capacity_erl for m in self.models)

    @cached_property
    def bts_by_id(self) -> Dict[int, BtsNode]:
        return {b.id: b for b in self.bts}

    @cached_property
    def bsc_by_id(self) -> Dict[int, BscCandidate]:
        return {b.id: b for b in self.bsc}

    @cached_property
    def model_by_id(self) -> Dict[str, BscModel]:
        return {m.id: m for m in self.models}

    @property
    def total_traffic(self) -> float:
        return sum(b.traffic_erl for b in self.bts)


@dataclass(frozen=True)
class BscConfig:
    """Chosen capacity-table index and model for one BSC (model None when unused)."""

    lines: int = 0
    model: Optional[str] = None


UNUSED = BscConfig()


@dataclass(frozen=True)
class Solution:
    """
    A design: the x_ij = 1 entries, per-BSC configuration, and its objective.

    ``assignment`` is kept as (bts_id, bsc_id) pairs so that malformed inputs
    (a BTS listed twice) survive loading and can be reported.
    """

    assignment: Tuple[Tuple[int, int], ...]
    bsc_config: Tuple[Tuple[int, BscConfig], ...]
    objective: float

    @classmethod
    def build(
        cls,
        assignment: Mapping[int, int],
        bsc_config: Mapping[int, BscConfig],
        objective: float,
    ) -> "Solution":
        return cls(
            assignment=tuple(sorted(assignment.items())),
            bsc_config=tuple(sorted(bsc_config.items())),
            objective=float(objective),
        )

    @property
    def assignment_map(self) -> Dict[int, int]:
        return dict(self.assignment)

    @property
    def config_map(self) -> Dict[int, BscConfig]:
        return dict(self.bsc_config)

    def config_for(self, bsc_id: int) -> BscConfig:
        return self.config_map.get(bsc_id, UNUSED)

    def assignment_key(self) -> Tuple[int, ...]:
        """Assigned BSC ids in BTS-id order; the deterministic tie-break key."""
        return tuple(bsc_id for _, bsc_id in self.assignment)

    def opened_bscs(self) -> Tuple[int, ...]:
        return tuple(j for j, cfg in self.bsc_config if cfg.model is not None)


@dataclass(frozen=True)
class CostBreakdown:
    """The three objective terms; ``total`` is their sum."""

    abis_cost: float
    trunk_cost: float
    bsc_cost: float
    total: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "total", self.abis_cost + self.trunk_cost + self.bsc_cost)


@dataclass(frozen=True)
class Violation:
    """One broken model constraint.

    ``constraint`` is one of "assignment" (each BTS to exactly one BSC),
    "line-capacity", "model-capacity", "unused-bsc" or "unknown-id".
    """

    constraint: str
    subject: str
    message: str

    def __str__(self) -> str:
        return f"[{self.constraint}] {self.subject}: {self.message}"
