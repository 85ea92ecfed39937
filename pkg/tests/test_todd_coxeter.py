import pytest

import src.todd_coxeter as todd_coxeter
from src.errors import EnumerationError, PresentationError, StructureError
from src.group import STRUCTURE_PROFILES
from src.presentation import NAMED_ORDERS, named, parse, string_coxeter, table1_rows
from src.todd_coxeter import (
    CLOSED, OVER_LIMIT, enumerate_cosets, image_order, permutation_image, probe_structure,
    profile_labels, relators_hold,
)


def test_symmetric_group_s3():
    pres = string_coxeter((3,))
    assert enumerate_cosets(pres).index == 6
    assert enumerate_cosets(pres, [(0,)]).index == 3
    assert enumerate_cosets(pres, [(0,), (1,)]).index == 1


@pytest.mark.parametrize("orders, expected", [
    ((2,), 4), ((3, 3), 24), ((4, 3), 48), ((5, 3), 120), ((3, 3, 3), 120), ((4, 3, 3), 384),
])
def test_finite_coxeter_group_orders(orders, expected):
    result = enumerate_cosets(string_coxeter(orders))
    assert result.outcome == CLOSED
    assert result.index == expected


def test_subgroup_index_in_cube_group():
    result = enumerate_cosets(string_coxeter((4, 3)), [(1,), (2,)])
    assert result.index == 8


@pytest.mark.parametrize("row", table1_rows(), ids=lambda row: row.label)
def test_amalgam_orders(row):
    result = enumerate_cosets(row.presentation())
    assert result.closed
    assert result.index == row.order
    assert relators_hold(result, row.presentation())


@pytest.mark.parametrize("name", ["11cell", "57cell", "dropped-{3,5,3}"])
def test_named_presentations_close(name):
    pres = named(name)
    result = enumerate_cosets(pres)
    assert result.index == NAMED_ORDERS[name]
    assert relators_hold(result, pres)
    assert image_order(result) == result.index


def test_structure_probes():
    probed = {}
    for row in table1_rows():
        if row.structure is None:
            continue
        perms = permutation_image(enumerate_cosets(row.presentation()))
        probed[row.structure] = probe_structure(perms, row.structure)
    assert probed["A5"] and probed["S4"] and probed["S5"] and probed["2^4:S3"]
    assert probed["L2(19)"] is None and probed["L2(11)"] is None


def test_probe_rejects_wrong_label():
    a5_row = next(row for row in table1_rows() if row.structure == "A5")
    perms = permutation_image(enumerate_cosets(a5_row.presentation()))
    assert probe_structure(perms, "S4") is False
    s4_perms = permutation_image(enumerate_cosets(string_coxeter((3, 3))))
    assert probe_structure(s4_perms, "S4") is True
    assert probe_structure(s4_perms, "2^4:S3") is False


def test_known_profiles_label_uniquely():
    for label, profile in STRUCTURE_PROFILES.items():
        assert profile_labels(profile) == [label]
    assert profile_labels({1: 1, 2: 1}) == []


def test_profile_collision_raises(monkeypatch):
    a5_row = next(row for row in table1_rows() if row.structure == "A5")
    perms = permutation_image(enumerate_cosets(a5_row.presentation()))
    colliding = dict(STRUCTURE_PROFILES, **{"SL(2,4)": STRUCTURE_PROFILES["A5"]})
    monkeypatch.setattr(todd_coxeter, "STRUCTURE_PROFILES", colliding)
    with pytest.raises(StructureError):
        probe_structure(perms, "A5")


def test_coset_limit_is_reported():
    result = enumerate_cosets(named("11cell"), max_cosets=100)
    assert result.outcome == OVER_LIMIT
    assert not result.closed
    assert result.live_at_stop <= 100
    assert set(result.to_json()) == {"outcome", "definitions_made", "live_at_stop", "max_cosets"}
    with pytest.raises(EnumerationError):
        permutation_image(result)


def test_closed_result_json():
    data = enumerate_cosets(string_coxeter((3,))).to_json()
    assert data == {"outcome": CLOSED, "definitions_made": data["definitions_made"], "index": 6}


def test_non_involutory_presentation_rejected():
    with pytest.raises(PresentationError):
        enumerate_cosets(parse("gens 2; r0^2, (r0 r1)^3"))
    with pytest.raises(PresentationError):
        enumerate_cosets(string_coxeter((3,)), max_cosets=0)
    with pytest.raises(PresentationError):
        enumerate_cosets(string_coxeter((3,)), [(5,)])


@pytest.mark.slow
def test_dropped_57_cell_runs_out_of_room():
    result = enumerate_cosets(named("dropped-{5,3,5}"), max_cosets=200_000)
    assert result.outcome == OVER_LIMIT
    assert NAMED_ORDERS["dropped-{5,3,5}"] is None
