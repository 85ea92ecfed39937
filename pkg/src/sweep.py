# src/sweep.py
"""
Sweep orchestration: search every (q, rank), classify, and emit one record per
equivalence class as a JSON line, optionally persisted to SQLite.
"""
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Iterable, List, Optional, Sequence

from sqlalchemy.orm import Session

import src.config as config
from src.database import CGroupClass, SessionLocal, SweepRun, init_db
from src.errors import FieldError
from src.field import field_new
from src.group import PSL, build_group
from src.polytope import parabolic_f_vector
from src.search import dedupe, petrie_type, run_search
from src.utils import prime_power, setup_logger

logger = setup_logger("Sweep")


@dataclass
class SweepConfig:
    q_list: List[int]
    ranks: List[int]
    workers: int = config.DEFAULT_WORKERS
    output: Path = config.SWEEP_DIR
    use_db: bool = True
    verbose: bool = False

    def __post_init__(self):
        for q in self.q_list:
            if prime_power(q) is None:
                raise FieldError(f"q={q} is not a prime power")
            if q > config.SWEEP_Q_GUARD:
                raise FieldError(f"q={q} above the sweep guard {config.SWEEP_Q_GUARD}")
        for rank in self.ranks:
            if rank not in config.SEARCH_RANKS:
                raise FieldError(f"rank {rank} not in {config.SEARCH_RANKS}")
        self.output = Path(self.output)


@dataclass
class ClassRow:
    """One JSON line of sweep output."""
    q: int
    rank: int
    type: List[int]
    petrie: Optional[List[int]]
    f_vector: List[int]
    self_dual: bool
    classes: int
    class_size: int
    representative: List[int]

    def to_json(self) -> str:
        payload = asdict(self)
        payload.pop("representative")
        return json.dumps(payload)


def prime_powers_up_to(q_max: int) -> List[int]:
    return [q for q in range(2, q_max + 1) if prime_power(q) is not None]


def classify(q: int, rank: int, workers: int = 1, verbose: bool = False) -> List[ClassRow]:
    """Search PSL(2,q) at one rank and return one row per PGammaL + duality class."""
    p, r = prime_power(q)
    ctx = build_group(field_new(p, r), PSL)
    report = run_search(ctx, rank, workers=workers, verbose=verbose)
    rows = []
    for cls in dedupe(ctx, report.records, allow_duality=True):
        rep = cls.representative
        rows.append(ClassRow(
            q=q, rank=rank,
            type=list(cls.type),
            petrie=list(petrie_type(ctx, rep)) if rank == 4 else None,
            f_vector=list(parabolic_f_vector(ctx, rep)),
            self_dual=cls.self_dual,
            classes=cls.inner_classes,
            class_size=cls.orbit_size,
            representative=list(rep.gens),
        ))
    return rows


class SweepWriter:
    """
    Buffers class rows and writes them to SQLite in batches.
    """

    def __init__(self, run_id: int, batch_size: int = config.DB_BATCH_SIZE):
        self.run_id = run_id
        self.buffer: List[CGroupClass] = []
        self.batch_size = batch_size

    def add(self, row: ClassRow) -> None:
        self.buffer.append(CGroupClass(
            run_id=self.run_id, q=row.q, rank=row.rank,
            type=json.dumps(row.type), petrie=json.dumps(row.petrie),
            f_vector=json.dumps(row.f_vector), self_dual=row.self_dual,
            class_size=row.class_size, classes=row.classes,
            representative=json.dumps(row.representative),
        ))
        if len(self.buffer) >= self.batch_size:
            self.flush()

    def flush(self) -> None:
        """
        Writes buffered rows in a single transaction.
        """
        if not self.buffer:
            return

        session: Session = SessionLocal()
        try:
            session.bulk_save_objects(self.buffer)
            session.commit()
            self.buffer.clear()
        except Exception as e:
            logger.error(f"Database write error: {e}")
            session.rollback()
        finally:
            session.close()


def _start_run(cfg: SweepConfig) -> int:
    init_db()
    session: Session = SessionLocal()
    try:
        run = SweepRun(q_list=",".join(map(str, cfg.q_list)),
                       ranks=",".join(map(str, cfg.ranks)), workers=cfg.workers)
        session.add(run)
        session.commit()
        return run.id
    finally:
        session.close()


def _finish_run(run_id: int, elapsed: float) -> None:
    session: Session = SessionLocal()
    try:
        run = session.get(SweepRun, run_id)
        run.elapsed_s = elapsed
        session.commit()
    finally:
        session.close()


def run_sweep(cfg: SweepConfig, emit: Optional[Callable[[str], None]] = None) -> List[ClassRow]:
    """
    Runs the whole sweep.  Each class row goes to `emit` (one JSON line) as it
    is found and to sweep.jsonl under cfg.output.

    Returns:
        every class row, sorted by (q, rank, type, representative).
    """
    start = time.perf_counter()
    cfg.output.mkdir(parents=True, exist_ok=True)
    run_id = _start_run(cfg) if cfg.use_db else None
    writer = SweepWriter(run_id) if cfg.use_db else None

    rows: List[ClassRow] = []
    with open(cfg.output / "sweep.jsonl", "w") as fh:
        for q in sorted(cfg.q_list):
            for rank in sorted(cfg.ranks):
                found = classify(q, rank, workers=cfg.workers, verbose=cfg.verbose)
                logger.info(f"q={q} rank {rank}: {len(found)} class(es)")
                for row in found:
                    line = row.to_json()
                    fh.write(line + "\n")
                    if emit is not None:
                        emit(line)
                    if writer is not None:
                        writer.add(row)
                rows.extend(found)

    elapsed = time.perf_counter() - start
    if writer is not None:
        writer.flush()
        _finish_run(run_id, elapsed)
    logger.info(f"sweep finished in {elapsed:.1f}s: {len(rows)} class(es)")
    return rows


def read_jsonl(path: Path) -> List[dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def rows_to_dicts(rows: Iterable[ClassRow]) -> List[dict]:
    return [json.loads(row.to_json()) for row in rows]


def sweep_q_list(q_list: Optional[Sequence[int]], q_max: Optional[int]) -> List[int]:
    if q_list:
        return list(q_list)
    if q_max is None:
        raise FieldError("either a q list or q_max is required")
    return prime_powers_up_to(q_max)
