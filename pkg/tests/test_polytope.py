import json

import pytest

from src.errors import TupleError
from src.group import closure
from src.polytope import (
    build_lattice, check_diamond, dual_tuple, edge_graph, export_lattice, face_vector, flags,
    identify_facet_and_vertex_figure, incident_literal, is_complete, is_self_dual,
    parabolic_f_vector, petrie_orders,
)
from src.search import dedupe, schlafli_type, search, string_condition, first_ip_failure


@pytest.fixture(scope="module")
def eleven_cell(psl11):
    return dedupe(psl11, search(psl11, 4))[0].representative


@pytest.fixture(scope="module")
def eleven_lattice(psl11, eleven_cell):
    return build_lattice(psl11, eleven_cell)


def _hemicube(ctx):
    """A {4,3}_3 tuple generating an S4 inside PSL(2,7)."""
    invs = [int(x) for x in ctx.involutions]
    for r0 in invs:
        for r1 in invs:
            for r2 in invs:
                tup = (r0, r1, r2)
                if not string_condition(ctx, tup) or schlafli_type(ctx, tup) != (4, 3):
                    continue
                if closure(ctx, tup).order == 24 and first_ip_failure(ctx, tup, capped=False) is None:
                    return tup
    raise AssertionError("no hemicube tuple in PSL(2,7)")


def test_eleven_cell_face_vector(eleven_lattice):
    assert face_vector(eleven_lattice) == (11, 55, 55, 11)
    assert eleven_lattice.group_order == 660


def test_eleven_cell_facet_index(psl11, eleven_cell):
    gens = list(eleven_cell.gens)
    assert psl11.order // closure(psl11, gens[:3]).order == 11
    assert psl11.order // closure(psl11, gens[1:]).order == 11


def test_eleven_cell_edge_graph_is_complete(eleven_lattice):
    graph = edge_graph(eleven_lattice)
    assert graph.number_of_nodes() == 11
    assert is_complete(graph)


def test_eleven_cell_invariants(psl11, eleven_cell):
    assert petrie_orders(psl11, eleven_cell) == (5, 5)
    assert is_self_dual(psl11, eleven_cell)
    facet, vertex_figure = identify_facet_and_vertex_figure(psl11, eleven_cell)
    assert str(facet) == "{3,5}_5"
    assert str(vertex_figure) == "{5,3}_5"
    assert facet.order == vertex_figure.order == 60
    assert facet.structure == "A5"


def test_eleven_cell_flags_and_diamond(eleven_lattice):
    assert len(flags(eleven_lattice)) == 660
    assert check_diamond(eleven_lattice)
    assert check_diamond(eleven_lattice, sample=200)


def test_incidence_matches_literal_definition(eleven_lattice):
    pairs = {tuple(p) for p in eleven_lattice.incidences[(0, 1)].tolist()}
    for a in range(3):
        for b in range(eleven_lattice.f_vector[1]):
            assert incident_literal(eleven_lattice, 0, a, 1, b) == ((a, b) in pairs)


def test_parabolic_f_vector_agrees(psl11, eleven_cell, eleven_lattice):
    assert parabolic_f_vector(psl11, eleven_cell) == eleven_lattice.f_vector


def test_dual_face_vector_is_reversed(psl11, eleven_cell, eleven_lattice):
    dual = build_lattice(psl11, dual_tuple(eleven_cell))
    assert dual.f_vector == eleven_lattice.f_vector[::-1]


def test_export_lattice_is_json(eleven_lattice):
    data = json.loads(json.dumps(export_lattice(eleven_lattice)))
    assert data["f_vector"] == [11, 55, 55, 11]
    assert [len(faces) for faces in data["faces"]] == [11, 55, 55, 11]
    assert set(data["incidences"]) == {"0-1", "1-2", "2-3"}
    assert len(data["incidences"]["0-1"]) == 110


def test_hemicube_in_subgroup(psl7):
    tup = _hemicube(psl7)
    lattice = build_lattice(psl7, tup)
    assert lattice.group_order == 24
    assert lattice.f_vector == (4, 6, 3)
    assert is_complete(edge_graph(lattice))
    assert check_diamond(lattice)
    assert len(flags(lattice)) == 24
    assert not is_self_dual(psl7, tup)


def test_build_lattice_rejects_non_c_groups(psl11):
    a = int(psl11.involutions[0])
    with pytest.raises(TupleError):
        build_lattice(psl11, (a, a, a))


@pytest.mark.slow
def test_fifty_seven_cell(psl19):
    tup = dedupe(psl19, search(psl19, 4))[0].representative
    lattice = build_lattice(psl19, tup)
    assert lattice.f_vector == (57, 171, 171, 57)
    assert psl19.order // closure(psl19, list(tup.gens[:3])).order == 57
    graph = edge_graph(lattice)
    assert graph.number_of_edges() == 171
    assert not is_complete(graph)
    assert {d for _, d in graph.degree()} == {6}
    assert petrie_orders(psl19, tup) == (5, 5)
    assert is_self_dual(psl19, tup)
    assert len(flags(lattice)) == 3420
    assert check_diamond(lattice, sample=10_000)
    facet, vertex_figure = identify_facet_and_vertex_figure(psl19, tup)
    assert (str(facet), str(vertex_figure)) == ("{5,3}_5", "{3,5}_5")
