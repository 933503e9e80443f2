"""Seeded random instance generation.

Draw order from ``numpy.random.Generator(PCG64(seed))`` is fixed: MSC (x, y),
then BTS coordinates row by row, then BTS traffic, then any extra candidate
sites. Changing this order changes every generated instance.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from bss_planner.exceptions import ConfigurationError
from bss_planner.network.types import BscCandidate, BscModel, BtsNode, CostRates, Instance, Site
from bss_planner.traffic.capacity import TimeslotSchedule, build_capacity_table
from bss_planner.traffic.erlang import GoS

logger = logging.getLogger(__name__)

MSC_ID = 0


def default_models(
    costs: Tuple[float, ...] = (1000.0, 3000.0, 5000.0)
) -> Tuple[BscModel, ...]:
    """Small, medium and large BSCs of 512, 2048 and 4096 Erlangs; costs are arbitrary units."""
    small, medium, large = costs
    return (
        BscModel("small", 512.0, small),
        BscModel("medium", 2048.0, medium),
        BscModel("large", 4096.0, large),
    )


@dataclass(frozen=True)
class GenParams:
    """Generation constants; defaults reproduce the standard benchmark setup."""

    n_bts: int
    seed: int = 0
    area_km: float = 100.0
    traffic_max_erl: float = 80.0
    rates: CostRates = field(default_factory=lambda: CostRates(abis_rate=10.0, a_rate=10.0))
    models: Tuple[BscModel, ...] = field(default_factory=default_models)
    gos: GoS = field(default_factory=GoS)
    max_lines: int = 40
    schedule: Optional[TimeslotSchedule] = None
    extra_candidates: int = 0

    def __post_init__(self):
        if isinstance(self.n_bts, bool) or not isinstance(self.n_bts, int) or self.n_bts < 1:
            raise ConfigurationError(f"n_bts must be an integer >= 1, got {self.n_bts!r}")
        if not self.traffic_max_erl > 0:
            raise ConfigurationError("traffic_max_erl must be > 0")
        if not self.area_km > 0:
            raise ConfigurationError("area_km must be > 0")
        if self.extra_candidates < 0:
            raise ConfigurationError("extra_candidates must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer")

    @classmethod
    def from_settings(cls, settings, n_bts: int, seed: int = 0, **overrides) -> "GenParams":
        """Build parameters from a :class:`utils.settings.Settings` object."""
        schedule = TimeslotSchedule.default(
            settings.max_lines,
            first_line=settings.first_line_voice_ts,
            other_lines=settings.other_line_voice_ts,
            sub_timeslots_per_ts=settings.sub_timeslots,
        )
        values = dict(
            n_bts=n_bts,
            seed=seed,
            area_km=settings.area_km,
            traffic_max_erl=settings.traffic_max_erl,
            rates=CostRates(settings.abis_rate, settings.a_rate, settings.line_fixed_cost),
            models=default_models(tuple(settings.model_costs)),
            gos=GoS(settings.gos),
            max_lines=settings.max_lines,
            schedule=schedule,
        )
        values.update(overrides)
        return cls(**values)


def generate(params: GenParams) -> Instance:
    """
    Generate a random instance.

    MSC and BTS sites are uniform over the square, one BSC candidate sits on
    each BTS site, traffic is uniform on [0, traffic_max_erl] and each BTS uses
    one Abis E1 line. Identical parameters give identical instances.

    Example:
        >>> inst = generate(GenParams(n_bts=5, seed=7))
        >>> len(inst.bts), len(inst.bsc), len(inst.capacity_table)
        (5, 5, 41)
    """
    rng = np.random.Generator(np.random.PCG64(params.seed))
    side = params.area_km

    msc_xy = rng.uniform(0.0, side, size=2)
    bts_xy = rng.uniform(0.0, side, size=(params.n_bts, 2))
    traffic = rng.uniform(0.0, params.traffic_max_erl, size=params.n_bts)
    extra_xy = rng.uniform(0.0, side, size=(params.extra_candidates, 2))

    msc = Site(MSC_ID, float(msc_xy[0]), float(msc_xy[1]))
    sites = [Site(i + 1, float(x), float(y)) for i, (x, y) in enumerate(bts_xy)]
    bts = [BtsNode(site=s, traffic_erl=float(a), abis_lines=1) for s, a in zip(sites, traffic)]
    bsc = [BscCandidate(site=s) for s in sites]
    bsc += [
        BscCandidate(Site(params.n_bts + k + 1, float(x), float(y)))
        for k, (x, y) in enumerate(extra_xy)
    ]

    schedule = params.schedule or TimeslotSchedule.default(params.max_lines)
    table = build_capacity_table(params.max_lines, schedule, params.gos)
    instance = Instance(
        msc=msc,
        bts=tuple(bts),
        bsc=tuple(bsc),
        models=tuple(params.models),
        capacity_table=table,
        rates=params.rates,
    )
    logger.debug(
        "Generated instance seed=%d |T|=%d |B|=%d traffic=%.1f Erl",
        params.seed,
        len(instance.bts),
        len(instance.bsc),
        instance.total_traffic,
    )
    return instance
