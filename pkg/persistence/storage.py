"""Storage adapters for benchmark runs - CSV files or a SQLAlchemy database."""

import csv
import logging
import os
from abc import ABC, abstractmethod
from dataclasses import asdict
from typing import TYPE_CHECKING, List, Optional

import pandas as pd
from sqlalchemy import create_engine
from sqlalchemy.exc import IntegrityError
from sqlalchemy.orm import sessionmaker

from .models import Base, BenchRunRow

if TYPE_CHECKING:
    from bss_planner.bench.scaling import BenchRun

logger = logging.getLogger(__name__)

RUN_COLUMNS = [
    "mode",
    "n_bts",
    "seed",
    "objective",
    "lower_bound",
    "optimal",
    "censored",
    "nodes",
    "elapsed",
]


class StorageAdapter(ABC):
    """Abstract interface for storing benchmark runs."""

    @abstractmethod
    def store_run(self, run: "BenchRun") -> None:
        """Store one solved benchmark instance."""
        raise NotImplementedError

    @abstractmethod
    def close(self) -> None:
        """Clean up resources."""
        pass


class CSVStorage(StorageAdapter):
    """
    Stores benchmark runs as CSV files, one per solver mode.

    Each row is appended and flushed immediately, so a sweep interrupted
    mid-way keeps everything solved so far.

    Note: Not thread-safe. Concurrent writers to the same file may duplicate
    the header.
    """

    def __init__(self, output_dir: str = "data/bench"):
        """
        Initialize CSV storage.

        Args:
            output_dir: Directory to store CSV files (created if doesn't exist)
        """
        self.output_dir = output_dir
        os.makedirs(output_dir, exist_ok=True)

    def path_for(self, mode: str) -> str:
        return os.path.join(self.output_dir, f"{mode}.csv")

    def store_run(self, run: "BenchRun") -> None:
        """Append ``run`` to ``<output_dir>/<mode>.csv``."""
        csv_path = self.path_for(run.mode)
        file_exists = os.path.exists(csv_path) and os.path.getsize(csv_path) > 0

        with open(csv_path, "a", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=RUN_COLUMNS)
            if not file_exists:
                writer.writeheader()
            writer.writerow({k: v for k, v in asdict(run).items() if k in RUN_COLUMNS})

    def close(self) -> None:
        """No cleanup needed for CSV storage."""
        pass


class ORMStorage(StorageAdapter):
    """Store benchmark runs through the SQLAlchemy ORM.

    Tables are created on first use. A run whose (mode, n_bts, seed) is
    already stored is skipped.

    Args:
        db_url: SQLAlchemy URL (``sqlite:///bench.db``, ``postgresql://...``)

    Example:
        >>> storage = ORMStorage("sqlite:///bench.db")
        >>> storage.store_run(run)
        >>> storage.fetch_runs("exact").head()
        >>> storage.close()
    """

    def __init__(self, db_url: str) -> None:
        self.engine = create_engine(db_url)
        self.Session = sessionmaker(bind=self.engine)
        Base.metadata.create_all(self.engine)

    def store_run(self, run: "BenchRun") -> None:
        session = self.Session()
        try:
            session.add(
                BenchRunRow(
                    mode=run.mode,
                    n_bts=run.n_bts,
                    seed=run.seed,
                    objective=run.objective,
                    lower_bound=run.lower_bound,
                    optimal=run.optimal,
                    censored=run.censored,
                    nodes=run.nodes,
                    elapsed=run.elapsed,
                )
            )
            session.commit()
        except IntegrityError:
            session.rollback()
            logger.debug("Run mode=%s n=%d seed=%d already stored", run.mode, run.n_bts, run.seed)
        finally:
            session.close()

    def fetch_runs(self, mode: Optional[str] = None) -> pd.DataFrame:
        """Stored runs as a DataFrame ordered by size then seed."""
        session = self.Session()
        try:
            query = session.query(BenchRunRow)
            if mode is not None:
                query = query.filter(BenchRunRow.mode == mode)
            rows = query.order_by(BenchRunRow.n_bts, BenchRunRow.seed).all()
            return pd.DataFrame([row.to_dict() for row in rows], columns=RUN_COLUMNS)
        finally:
            session.close()

    def close(self) -> None:
        """Dispose of the engine's connection pool."""
        if self.engine:
            self.engine.dispose()


class CompositeStorage(StorageAdapter):
    """Fan every run out to several adapters; closing closes each of them.

    Example:
        >>> storage = CompositeStorage([ORMStorage(url), CSVStorage("data/bench")])
    """

    def __init__(self, adapters: List[StorageAdapter]) -> None:
        self.adapters = list(adapters)

    def store_run(self, run: "BenchRun") -> None:
        for adapter in self.adapters:
            adapter.store_run(run)

    def close(self) -> None:
        for adapter in self.adapters:
            adapter.close()
