# src/reports.py
import json
from typing import List, Optional, Sequence

import pandas as pd
from sqlalchemy import select

from src.database import CGroupClass, SessionLocal, SweepRun
from src.utils import setup_logger

logger = setup_logger("Reports")

SUMMARY_COLUMNS = ["q", "rank", "classes", "types", "self_dual"]


def rows_frame(rows: Sequence[dict], q_list: Optional[Sequence[int]] = None,
               ranks: Optional[Sequence[int]] = None) -> pd.DataFrame:
    """
    Flat frame of sweep rows; (q, rank) pairs without classes appear with
    zero classes when q_list and ranks are given.
    """
    df = pd.DataFrame(list(rows), columns=["q", "rank", "type", "petrie", "f_vector",
                                           "self_dual", "classes", "class_size"])
    if q_list is not None and ranks is not None:
        df = df.astype({"q": "int64", "rank": "int64"})
        grid = pd.MultiIndex.from_product([sorted(q_list), sorted(ranks)], names=["q", "rank"])
        df = grid.to_frame(index=False).merge(df, on=["q", "rank"], how="left")
    return df


def summary_frame(df: pd.DataFrame) -> pd.DataFrame:
    """One line per (q, rank): number of classes, their types, whether all are self-dual."""
    if df.empty:
        return pd.DataFrame(columns=SUMMARY_COLUMNS)

    def _fmt(t) -> str:
        return "{" + ",".join(map(str, t)) + "}"

    found = df.dropna(subset=["type"])
    if found.empty:
        empty = df[["q", "rank"]].drop_duplicates().sort_values(["q", "rank"]).reset_index(drop=True)
        return empty.assign(classes=0, types="", self_dual="")[SUMMARY_COLUMNS]
    grouped = found.groupby(["q", "rank"])
    summary = pd.DataFrame({
        "classes": grouped.size(),
        "types": grouped["type"].agg(lambda ts: " ".join(sorted(_fmt(t) for t in ts))),
        "self_dual": grouped["self_dual"].agg(lambda s: bool(all(s))),
    })
    keys = df[["q", "rank"]].drop_duplicates().set_index(["q", "rank"])
    summary = keys.join(summary, how="left")
    summary["classes"] = summary["classes"].fillna(0).astype(int)
    summary["types"] = summary["types"].fillna("")
    summary["self_dual"] = summary["self_dual"].astype(object).where(summary["classes"] > 0, "")
    return summary.reset_index()[SUMMARY_COLUMNS].sort_values(["q", "rank"]).reset_index(drop=True)


def load_run(run_id: Optional[int] = None) -> pd.DataFrame:
    """
    Reads one stored sweep (the latest by default) back into a rows frame.
    """
    session = SessionLocal()
    try:
        if run_id is None:
            run = session.execute(select(SweepRun).order_by(SweepRun.id.desc())).scalars().first()
            if run is None:
                return pd.DataFrame()
            run_id = run.id
        query = select(CGroupClass).where(CGroupClass.run_id == run_id)
        df = pd.read_sql(query, session.bind)
    except Exception as e:
        logger.error(f"Error reading run {run_id}: {e}")
        return pd.DataFrame()
    finally:
        session.close()

    for column in ("type", "petrie", "f_vector", "representative"):
        df[column] = df[column].map(json.loads)
    df["self_dual"] = df["self_dual"].astype(bool)
    return df


def list_runs() -> List[dict]:
    session = SessionLocal()
    try:
        runs = session.execute(select(SweepRun).order_by(SweepRun.id)).scalars().all()
        return [{"id": r.id, "started_at": r.started_at, "q_list": r.q_list,
                 "ranks": r.ranks, "elapsed_s": r.elapsed_s} for r in runs]
    finally:
        session.close()
