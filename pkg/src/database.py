# src/database.py
from datetime import datetime

from sqlalchemy import (Boolean, Column, DateTime, Float, ForeignKey, Index, Integer, String,
                        create_engine)
from sqlalchemy.orm import declarative_base, relationship, sessionmaker

import src.config as config

Base = declarative_base()


class SweepRun(Base):
    """
    One invocation of the sweep command.
    """
    __tablename__ = 'sweep_runs'

    id = Column(Integer, primary_key=True, autoincrement=True)
    started_at = Column(DateTime, default=datetime.utcnow, index=True)
    q_list = Column(String, nullable=False)       # "5,7,9,11"
    ranks = Column(String, nullable=False)        # "3,4"
    workers = Column(Integer, nullable=False)
    elapsed_s = Column(Float)

    classes = relationship("CGroupClass", back_populates="run")

    def __repr__(self):
        return f"<SweepRun(id={self.id}, q={self.q_list}, ranks={self.ranks})>"


class CGroupClass(Base):
    """
    One equivalence class of string C-group tuples (PGammaL + duality).
    List-valued fields are stored as JSON text.
    """
    __tablename__ = 'cgroup_classes'

    id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(Integer, ForeignKey('sweep_runs.id'), nullable=False)
    q = Column(Integer, nullable=False)
    rank = Column(Integer, nullable=False)
    type = Column(String, nullable=False)
    petrie = Column(String)
    f_vector = Column(String, nullable=False)
    self_dual = Column(Boolean, nullable=False)
    class_size = Column(Integer, nullable=False)
    classes = Column(Integer, nullable=False)
    representative = Column(String, nullable=False)

    run = relationship("SweepRun", back_populates="classes")

    # Summaries group by (q, rank)
    __table_args__ = (Index('idx_class_q_rank', 'q', 'rank'),)

    def __repr__(self):
        return f"<CGroupClass(q={self.q}, rank={self.rank}, type={self.type})>"


# --- Engine & Session Factory ---
engine = create_engine(
    config.DB_PATH,
    connect_args={"check_same_thread": False},
    echo=False  # Set to True for SQL debugging
)

SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)


def configure(db_url: str) -> None:
    """Points the session factory at another database (tests, --db flag)."""
    global engine
    engine = create_engine(db_url, connect_args={"check_same_thread": False}, echo=False)
    SessionLocal.configure(bind=engine)


def init_db():
    """Creates tables if they don't exist."""
    Base.metadata.create_all(bind=engine)
