"""Unit tests for storage adapters."""

import csv
import os

import pytest

from bss_planner.bench.scaling import BenchRun
from persistence.storage import CompositeStorage, CSVStorage, ORMStorage, RUN_COLUMNS, StorageAdapter


def make_run(seed=1, mode="exact", n_bts=5, objective=1234.5):
    return BenchRun(
        mode=mode,
        n_bts=n_bts,
        seed=seed,
        objective=objective,
        lower_bound=objective,
        optimal=True,
        censored=False,
        nodes=17,
        elapsed=0.25,
    )


@pytest.mark.database
class TestORMStorage:
    """Tests for ORMStorage against SQLite."""

    def test_store_run(self, sqlite_url):
        """Test storing a run and reading it back."""
        storage = ORMStorage(sqlite_url)
        storage.store_run(make_run())
        frame = storage.fetch_runs()
        assert len(frame) == 1
        assert frame.loc[0, "objective"] == 1234.5
        assert bool(frame.loc[0, "optimal"]) is True
        storage.close()

    def test_duplicate_runs_ignored(self, sqlite_url):
        """Test that the same (mode, n_bts, seed) is stored once."""
        storage = ORMStorage(sqlite_url)
        storage.store_run(make_run())
        storage.store_run(make_run(objective=999.0))
        frame = storage.fetch_runs()
        assert len(frame) == 1
        assert frame.loc[0, "objective"] == 1234.5
        storage.close()

    def test_fetch_filters_by_mode(self, sqlite_url):
        """Test mode filtering and size ordering."""
        storage = ORMStorage(sqlite_url)
        storage.store_run(make_run(seed=2, n_bts=10))
        storage.store_run(make_run(seed=1, n_bts=5))
        storage.store_run(make_run(seed=1, mode="greedy"))
        frame = storage.fetch_runs("exact")
        assert list(frame["n_bts"]) == [5, 10]
        assert set(frame["mode"]) == {"exact"}
        storage.close()

    def test_tables_created_on_open(self, sqlite_url):
        """Test that an empty database gives an empty, well-formed frame."""
        storage = ORMStorage(sqlite_url)
        frame = storage.fetch_runs()
        assert list(frame.columns) == RUN_COLUMNS
        assert frame.empty
        storage.close()


class TestCSVStorage:
    """Tests for CSVStorage adapter."""

    def test_store_run_creates_csv(self, tmp_path):
        """Test that store_run creates a per-mode CSV with a header."""
        storage = CSVStorage(str(tmp_path))
        storage.store_run(make_run())

        csv_path = os.path.join(tmp_path, "exact.csv")
        assert os.path.exists(csv_path)
        with open(csv_path) as f:
            lines = f.readlines()
        assert len(lines) == 2
        assert lines[0].strip() == ",".join(RUN_COLUMNS)

    def test_store_run_appends(self, tmp_path):
        """Test that later runs append without repeating the header."""
        storage = CSVStorage(str(tmp_path))
        storage.store_run(make_run(seed=1))
        storage.store_run(make_run(seed=2))
        with open(tmp_path / "exact.csv", newline="") as f:
            rows = list(csv.DictReader(f))
        assert [r["seed"] for r in rows] == ["1", "2"]

    def test_modes_use_separate_files(self, tmp_path):
        """Test one file per solver mode."""
        storage = CSVStorage(str(tmp_path))
        storage.store_run(make_run(mode="exact"))
        storage.store_run(make_run(mode="local"))
        assert sorted(os.listdir(tmp_path)) == ["exact.csv", "local.csv"]

    def test_creates_output_dir(self, tmp_path):
        """Test that a missing output directory is created."""
        target = tmp_path / "nested" / "runs"
        CSVStorage(str(target))
        assert target.is_dir()


class RecordingStorage(StorageAdapter):
    def __init__(self):
        self.runs = []
        self.closed = False

    def store_run(self, run):
        self.runs.append(run)

    def close(self):
        self.closed = True


class TestCompositeStorage:
    """Tests for CompositeStorage."""

    def test_forwards_every_run(self):
        """Test that each adapter receives every run in order."""
        first, second = RecordingStorage(), RecordingStorage()
        storage = CompositeStorage([first, second])
        storage.store_run(make_run(seed=1))
        storage.store_run(make_run(seed=2))
        assert [r.seed for r in first.runs] == [1, 2]
        assert [r.seed for r in second.runs] == [1, 2]

    def test_close_closes_each(self):
        """Test that closing the composite closes every adapter."""
        first, second = RecordingStorage(), RecordingStorage()
        CompositeStorage([first, second]).close()
        assert first.closed and second.closed

    @pytest.mark.database
    def test_database_and_csv_together(self, sqlite_url, tmp_path):
        """Test one run landing in both the database and the CSV file."""
        orm = ORMStorage(sqlite_url)
        storage = CompositeStorage([orm, CSVStorage(str(tmp_path / "runs"))])
        storage.store_run(make_run())
        assert len(orm.fetch_runs()) == 1
        assert (tmp_path / "runs" / "exact.csv").exists()
        storage.close()
