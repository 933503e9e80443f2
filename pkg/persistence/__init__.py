"""Persistence layer for benchmark runs."""

from .storage import CompositeStorage, CSVStorage, ORMStorage, StorageAdapter

__all__ = ["StorageAdapter", "CSVStorage", "ORMStorage", "CompositeStorage"]
