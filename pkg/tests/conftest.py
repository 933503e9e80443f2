"""Pytest configuration and fixtures."""

from typing import Iterable, Optional, Sequence, Tuple

import pytest

from bss_planner.instances.generator import GenParams, default_models, generate
from bss_planner.network.types import (
    BscCandidate,
    BscModel,
    BtsNode,
    CostRates,
    Instance,
    Site,
)
from bss_planner.traffic.capacity import build_capacity_table


def make_instance(
    bts: Iterable[Tuple[int, float, float, float]],
    bsc: Optional[Iterable[Tuple[int, float, float]]] = None,
    msc: Tuple[float, float] = (0.0, 0.0),
    rates: Optional[CostRates] = None,
    models: Optional[Sequence[BscModel]] = None,
    max_lines: int = 40,
) -> Instance:
    """
    Build an instance from plain tuples.

    ``bts`` holds (id, x, y, traffic); ``bsc`` holds (id, x, y) and defaults to
    one candidate colocated with every BTS.
    """
    bts = list(bts)
    nodes = [BtsNode(Site(i, x, y), a) for i, x, y, a in bts]
    if bsc is None:
        candidates = [BscCandidate(n.site) for n in nodes]
    else:
        candidates = [BscCandidate(Site(j, x, y)) for j, x, y in bsc]
    return Instance(
        msc=Site(0, *msc),
        bts=tuple(nodes),
        bsc=tuple(candidates),
        models=tuple(models or default_models()),
        capacity_table=build_capacity_table(max_lines),
        rates=rates or CostRates(abis_rate=10.0, a_rate=10.0),
    )


@pytest.fixture(scope="session")
def capacity_table():
    """Default 40-line table at 2% GoS."""
    return build_capacity_table(40)


@pytest.fixture
def single_pair():
    """One BTS and one BSC candidate 3 km apart, MSC 4 km further."""
    return make_instance([(1, 0.0, 0.0, 20.0)], bsc=[(1, 3.0, 0.0)], msc=(7.0, 0.0))


@pytest.fixture
def generated_instance():
    """Seeded 5-BTS instance with the reference generation defaults."""
    return generate(GenParams(n_bts=5, seed=42))


def oracle_params():
    """(n_bts, n_bsc, seed) triples of the oracle sweep: |T| in 2..7, |B| in 2..3."""
    triples = []
    seed = 0
    while len(triples) < 204:
        for n_bts in range(2, 8):
            for n_bsc in (2, 3):
                triples.append((n_bts, n_bsc, seed))
                seed += 1
    return triples


def oracle_instance(n_bts: int, n_bsc: int, seed: int) -> Instance:
    """Generated instance whose candidate set is cut to the first ``n_bsc`` sites."""
    full = generate(GenParams(n_bts=max(n_bts, n_bsc), seed=seed))
    return Instance(
        msc=full.msc,
        bts=full.bts[:n_bts],
        bsc=full.bsc[:n_bsc],
        models=full.models,
        capacity_table=full.capacity_table,
        rates=full.rates,
    )


@pytest.fixture
def sqlite_url(tmp_path):
    """SQLAlchemy URL of a fresh SQLite database in a temporary directory."""
    return f"sqlite:///{tmp_path / 'bench.db'}"


def pytest_collection_modifyitems(config, items):
    """Auto-apply the sqlite_url fixture to tests marked with @pytest.mark.database."""
    for item in items:
        if item.get_closest_marker("database"):
            item.fixturenames.append("sqlite_url")
