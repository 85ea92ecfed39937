import json

import pytest

from app import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main


def test_tc_named_eleven_cell(capsys):
    assert main(["tc", "--named", "11cell"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert payload["outcome"] == "closed"
    assert payload["index"] == 660


def test_tc_presentation_file_with_subgroup(tmp_path, capsys):
    path = tmp_path / "s4.txt"
    path.write_text("gens 3;\nr0^2, r1^2, r2^2,\n(r0 r1)^3, (r1 r2)^3, (r0 r2)^2\n")
    assert main(["tc", str(path), "--subgroup", "r0, r1"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out.strip())
    assert payload["index"] == 4


def test_tc_pres_option(tmp_path, capsys):
    path = tmp_path / "s4.txt"
    path.write_text("gens 3;\nr0^2, r1^2, r2^2,\n(r0 r1)^3, (r1 r2)^3, (r0 r2)^2\n")
    assert main(["tc", "--pres", str(path)]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out.strip())
    assert payload["outcome"] == "closed"
    assert payload["index"] == 24


def test_tc_pres_conflicts_with_named(tmp_path):
    path = tmp_path / "s4.txt"
    path.write_text("gens 1; r0^2")
    with pytest.raises(SystemExit) as err:
        main(["tc", "--pres", str(path), "--named", "11cell"])
    assert err.value.code == EXIT_USAGE


def test_tc_named_fifty_seven_cell(capsys):
    assert main(["tc", "--named", "57cell"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert payload["outcome"] == "closed"
    assert payload["index"] == 3420


def test_tc_table1(capsys):
    assert main(["tc", "--table1"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 10
    assert all(line.endswith("ok") for line in lines)


def test_tc_syntax_error_is_usage(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("gens 2; r0^2, r1 ^ ^")
    assert main(["tc", str(path)]) == EXIT_USAGE


def test_tc_missing_file_is_usage(tmp_path):
    assert main(["tc", str(tmp_path / "absent.txt")]) == EXIT_USAGE


def test_tc_over_limit(capsys):
    assert main(["tc", "--named", "11cell", "--max-cosets", "50"]) == EXIT_MISMATCH
    payload = json.loads(capsys.readouterr().out.strip())
    assert payload["outcome"] == "over_limit"


def test_census_rejects_non_prime_power():
    with pytest.raises(SystemExit) as err:
        main(["census", "--q", "12"])
    assert err.value.code == EXIT_USAGE


def test_census_small_q(capsys):
    assert main(["census", "--q", "5", "--families", "1,2,3,4"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("q,family,parameter")
    assert all(line.endswith("True") for line in lines[1:])


def test_polytope_absent(tmp_path, capsys):
    assert main(["polytope", "--q", "13", "--workers", "1", "--output", str(tmp_path)]) == EXIT_MISMATCH
    assert "no rank-4" in capsys.readouterr().out


def test_polytope_eleven_cell(tmp_path, capsys):
    assert main(["polytope", "--q", "11", "--workers", "1", "--output", str(tmp_path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "type = {3,5,3}" in out
    assert "f = (11,55,55,11)" in out
    assert "edge graph = K11" in out
    assert "petrie = (5,5)" in out
    assert "self-dual" in out
    data = json.loads((tmp_path / "lattice_q11.json").read_text())
    assert data["f_vector"] == [11, 55, 55, 11]


def test_sweep_without_db(tmp_path, capsys):
    code = main(["sweep", "--q", "5,7", "--rank", "3", "--no-db", "--workers", "1", "--output", str(tmp_path)])
    assert code == EXIT_OK
    lines = [json.loads(line) for line in capsys.readouterr().out.strip().splitlines()]
    assert lines and {row["q"] for row in lines} == {5}
    assert (tmp_path / "summary.csv").exists()
    assert (tmp_path / "sweep.jsonl").exists()


def test_sweep_bad_rank_is_usage(tmp_path):
    assert main(["sweep", "--q", "5", "--rank", "6", "--no-db", "--output", str(tmp_path)]) == EXIT_USAGE


def test_lemma3_small(capsys):
    assert main(["lemma3", "--q", "9", "--qprime", "3"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("0 dihedral intersections of order > 4")
