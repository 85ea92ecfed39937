from fractions import Fraction

import pytest

from src.census import (
    CSV_COLUMNS, census_frame, census_parameters, count_a4_s4_a5, count_cyclic, count_dihedral,
    count_elem_abelian, count_frobenius_groups, count_klein, count_subfield_groups,
    dihedral_classes_formula, expand_classes, family6_h_values, family6_printed_counts,
    frobenius_formula, klein_subgroups, run_census, two_one_one, verify_lemma3,
)
from src.errors import CensusError
from src.group import PGL
from tests.conftest import pgl, psl


def _counts(report):
    return report.formula_count, report.observed_count, report.classes_formula, report.classes_observed


def test_q11_families(psl11):
    assert _counts(count_cyclic(psl11, 5)) == (66, 66, 1, 1)
    assert _counts(count_cyclic(psl11, 3)) == (55, 55, 1, 1)
    assert _counts(count_dihedral(psl11, 3)) == (110, 110, 2, 2)
    assert _counts(count_dihedral(psl11, 6)) == (55, 55, 1, 1)
    assert _counts(count_klein(psl11)) == (55, 55, 1, 1)
    assert _counts(count_elem_abelian(psl11, 1)) == (12, 12, 1, 1)
    a4, s4, a5 = count_a4_s4_a5(psl11)
    assert (a4.observed_count, s4.observed_count, a5.observed_count) == (55, 0, 22)
    assert a4.match and s4.match and a5.match
    assert a5.classes_observed == 2


def test_q7_families(psl7):
    d6 = count_dihedral(psl7, 3)
    assert (d6.observed_count, d6.classes_observed) == (28, 1)
    assert count_dihedral(psl7, 4).observed_count == 21
    klein = count_klein(psl7)
    assert (klein.observed_count, klein.classes_observed) == (14, 2)
    a4, s4, a5 = count_a4_s4_a5(psl7)
    assert a4.observed_count == 14
    assert (s4.observed_count, s4.classes_observed) == (14, 2)
    assert a5.observed_count == 0
    assert all(rep.match for rep in (d6, klein, a4, s4, a5))


def test_q5_is_a5(psl5):
    a4, s4, a5 = count_a4_s4_a5(psl5)
    assert (a4.observed_count, s4.observed_count) == (5, 0)
    assert a5.observed_count == 1 and a5.match
    assert a5.note


def test_dihedral_readings():
    assert dihedral_classes_formula(11, 3, "same") == 2
    assert dihedral_classes_formula(11, 3, "opposite") is None
    assert dihedral_classes_formula(7, 3) == 1
    assert dihedral_classes_formula(13, 7) == 1


def test_two_one_one():
    assert two_one_one(2, 4, 2) == 1
    assert two_one_one(3, 2, 1) == 2
    assert two_one_one(3, 3, 1) == 1


def test_printed_frobenius_count_is_not_integral():
    sets, _ = family6_printed_counts(5, 2, 1)
    assert sets == Fraction(1, 60)
    assert frobenius_formula(5, 2, 1) == (780, 2)


def test_frobenius_h_values():
    assert family6_h_values(3, 2, 1) == [2]
    assert family6_h_values(3, 2, 2) == [2, 4]
    assert family6_h_values(7, 1, 1) == [3]


def test_q9_unipotent_families(psl9):
    e3 = count_elem_abelian(psl9, 1)
    assert (e3.family, e3.observed_count, e3.classes_observed) == (5, 40, 2)
    assert count_elem_abelian(psl9, 2).observed_count == 10
    half = count_frobenius_groups(psl9, 1, 2)
    assert (half.observed_count, half.classes_observed) == (120, 2)
    for h in (2, 4):
        assert count_frobenius_groups(psl9, 2, h).observed_count == 10
    assert all(rep.match for rep in (e3, half))


def test_q9_polyhedral_and_subfield(psl9):
    a4, s4, a5 = count_a4_s4_a5(psl9)
    assert (a4.observed_count, s4.observed_count, a5.observed_count) == (30, 30, 12)
    l2 = count_subfield_groups(psl9, 1)
    assert (l2.family, l2.observed_count, l2.classes_observed) == (10, 30, 2)
    pgl3 = count_subfield_groups(psl9, 1, PGL)
    assert (pgl3.family, pgl3.observed_count, pgl3.classes_observed) == (11, 30, 2)
    assert l2.match and pgl3.match


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13])
def test_whole_census_matches(q):
    reports = run_census(psl(q))
    assert reports
    assert [r for r in reports if not r.match] == []


def test_census_parameters_q9(psl9):
    params = census_parameters(psl9)
    assert (1, (2,)) in params
    assert (5, (1,)) in params
    assert (6, (2, 4)) in params
    assert (11, (1,)) in params
    assert all(args[0] > 2 for family, args in params if family == 3)


def test_family_filter(psl7):
    reports = run_census(psl7, families=[4, 8])
    assert {r.family for r in reports} == {4, 8}


def test_expand_classes_sizes(psl11):
    subgroups, sizes = expand_classes(psl11, klein_subgroups(psl11)[:1])
    assert len(subgroups) == 55
    assert sizes == [55]


def test_census_errors(psl11, psl9):
    with pytest.raises(CensusError):
        count_cyclic(psl11, 4)
    with pytest.raises(CensusError):
        count_dihedral(psl11, 2)
    with pytest.raises(CensusError):
        count_klein(psl(8))
    with pytest.raises(CensusError):
        count_frobenius_groups(psl9, 1, 4)
    with pytest.raises(CensusError):
        count_subfield_groups(psl11, 2)
    with pytest.raises(CensusError):
        count_cyclic(pgl(5), 2)
    with pytest.raises(CensusError):
        verify_lemma3(psl11, 11)


def test_census_frame_columns(psl7):
    df = census_frame(run_census(psl7, families=[2]))
    assert list(df.columns) == CSV_COLUMNS
    assert df["match"].all()


def test_subfield_intersections_small(psl9):
    report = verify_lemma3(psl9, 3)
    assert report.subgroups == 30
    assert report.pairs == 435
    assert report.ok


@pytest.mark.slow
def test_q25_census(psl25):
    e5 = count_elem_abelian(psl25, 1)
    assert (e5.observed_count, e5.classes_observed) == (156, 2)
    l2 = count_subfield_groups(psl25, 1)
    assert (l2.observed_count, l2.classes_observed) == (130, 2)
    assert count_subfield_groups(psl25, 1, PGL).observed_count == 130
    assert all(r.match for r in run_census(psl25))


@pytest.mark.slow
def test_q25_subfield_intersections(psl25):
    report = verify_lemma3(psl25, 5)
    assert report.subgroups == 130
    assert report.pairs == 8385
    assert report.ok
    assert report.dihedral_intersections == 0
    assert report.cyclic_checks > 0
