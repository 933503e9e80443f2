"""SQLAlchemy ORM models for benchmark persistence.

One row per solved benchmark instance, keyed by (mode, n_bts, seed) so a
re-run of the same sweep does not duplicate rows.
"""

from sqlalchemy import (
    TIMESTAMP,
    Boolean,
    Column,
    Float,
    Integer,
    String,
    UniqueConstraint,
    func,
)
from sqlalchemy.orm import declarative_base

Base = declarative_base()


class BenchRunRow(Base):
    """ORM model for one benchmark instance result in the ``bench_runs`` table.

    Attributes:
        id: Serial primary key
        mode: Solver mode (exact, greedy, local, lagrange)
        n_bts: Instance size
        seed: Generator seed of the instance
        objective: Objective of the returned solution
        lower_bound: Proven lower bound for that solution
        optimal: Whether optimality was proven
        censored: Whether the run stopped at its time limit
        nodes: Branch-and-bound nodes explored (0 for heuristics)
        elapsed: Wall time in seconds
        created_at: Timestamp of record creation

    Example:
        >>> from sqlalchemy import create_engine
        >>> from sqlalchemy.orm import Session
        >>> engine = create_engine("sqlite:///bench.db")
        >>> Base.metadata.create_all(engine)
        >>> with Session(engine) as session:
        ...     censored = session.query(BenchRunRow).filter(BenchRunRow.censored).all()
    """

    __tablename__ = "bench_runs"

    id = Column(Integer, primary_key=True)
    mode = Column(String, nullable=False)
    n_bts = Column(Integer, nullable=False)
    seed = Column(Integer, nullable=False)
    objective = Column(Float, nullable=False)
    lower_bound = Column(Float, nullable=False)
    optimal = Column(Boolean, default=False, nullable=False)
    censored = Column(Boolean, default=False, nullable=False)
    nodes = Column(Integer, default=0, nullable=False)
    elapsed = Column(Float, nullable=False)
    created_at = Column(TIMESTAMP, server_default=func.current_timestamp(), nullable=False)

    __table_args__ = (UniqueConstraint("mode", "n_bts", "seed", name="uq_bench_run"),)

    def __repr__(self) -> str:
        return (
            f"BenchRunRow(mode='{self.mode}', n_bts={self.n_bts}, seed={self.seed}, "
            f"objective={self.objective}, optimal={self.optimal})"
        )

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "n_bts": self.n_bts,
            "seed": self.seed,
            "objective": self.objective,
            "lower_bound": self.lower_bound,
            "optimal": self.optimal,
            "censored": self.censored,
            "nodes": self.nodes,
            "elapsed": self.elapsed,
        }


__all__ = ["Base", "BenchRunRow"]
