import json

import pytest

import src.config as config
from src.errors import FieldError
from src.reports import SUMMARY_COLUMNS, list_runs, load_run, rows_frame, summary_frame
from src.sweep import (
    SweepConfig, classify, prime_powers_up_to, read_jsonl, rows_to_dicts, run_sweep, sweep_q_list,
)


def _golden(q: int):
    return read_jsonl(config.GOLDEN_DIR / f"sweep_q{q}_rank4.jsonl")


def test_prime_powers_up_to():
    assert prime_powers_up_to(16) == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    assert sweep_q_list([7, 5], None) == [7, 5]
    assert sweep_q_list(None, 9) == [2, 3, 4, 5, 7, 8, 9]
    with pytest.raises(FieldError):
        sweep_q_list(None, None)


def test_sweep_config_guards(tmp_path):
    with pytest.raises(FieldError):
        SweepConfig(q_list=[12], ranks=[4], output=tmp_path)
    with pytest.raises(FieldError):
        SweepConfig(q_list=[131], ranks=[4], output=tmp_path)
    with pytest.raises(FieldError):
        SweepConfig(q_list=[11], ranks=[2], output=tmp_path)


def test_classify_matches_golden_q11():
    rows = classify(11, 4)
    assert rows_to_dicts(rows) == _golden(11)
    assert rows[0].representative


def test_json_line_key_order():
    line = classify(11, 4)[0].to_json()
    assert list(json.loads(line)) == ["q", "rank", "type", "petrie", "f_vector",
                                      "self_dual", "classes", "class_size"]


def test_petrie_only_reported_at_rank4():
    rows = classify(5, 3)
    assert rows
    assert all(row.petrie is None for row in rows)
    assert all(json.loads(row.to_json())["petrie"] is None for row in rows)
    assert '"petrie": null' in rows[0].to_json()
    assert classify(11, 4)[0].petrie == [5, 5]


@pytest.mark.slow
def test_classify_matches_golden_q19():
    assert rows_to_dicts(classify(19, 4, workers=2)) == _golden(19)


def test_run_sweep_writes_jsonl_and_db(tmp_path, temp_db):
    emitted = []
    cfg = SweepConfig(q_list=[11, 13], ranks=[4], workers=1, output=tmp_path)
    rows = run_sweep(cfg, emit=emitted.append)
    assert len(rows) == 1
    assert [json.loads(line) for line in emitted] == read_jsonl(tmp_path / "sweep.jsonl")

    stored = load_run()
    assert len(stored) == 1
    assert stored.loc[0, "type"] == [3, 5, 3]
    assert stored.loc[0, "f_vector"] == [11, 55, 55, 11]
    assert bool(stored.loc[0, "self_dual"])
    runs = list_runs()
    assert len(runs) == 1
    assert runs[0]["q_list"] == "11,13"
    assert runs[0]["elapsed_s"] is not None


def test_load_run_on_empty_database(temp_db):
    assert load_run().empty


def test_summary_lists_empty_q():
    rows = rows_to_dicts(classify(11, 4))
    summary = summary_frame(rows_frame(rows, [11, 13], [4]))
    assert list(summary.columns) == SUMMARY_COLUMNS
    assert summary["q"].tolist() == [11, 13]
    assert summary["classes"].tolist() == [1, 0]
    assert summary.loc[0, "types"] == "{3,5,3}"
    assert summary.loc[1, "types"] == ""


def test_summary_with_no_classes_at_all():
    summary = summary_frame(rows_frame([], [7], [3]))
    assert summary["classes"].tolist() == [0]
    assert summary_frame(rows_frame([])).empty


@pytest.mark.slow
def test_rank4_only_at_11_and_19():
    found = {q: classify(q, 4, workers=config.DEFAULT_WORKERS) for q in prime_powers_up_to(61)}
    hits = {q: [row.type for row in rows] for q, rows in found.items() if rows}
    assert hits == {11: [[3, 5, 3]], 19: [[5, 3, 5]]}
