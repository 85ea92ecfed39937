import numpy as np
import pytest

from src.errors import GroupError
from src.field import field_new
from src.group import (
    PGL, PSL, STRUCTURE_PROFILES, build_group, centralizer, closure, conj, conjugate_many,
    elem_order, expected_order, frobenius, generated_subgroup, involution_classes, max_proper_order,
    mul, mul_ids, normalizer, order_profile, power, semilinear_conjugators, whole_group,
)
from tests.conftest import pgl, psl


@pytest.mark.parametrize("q, order", [(2, 6), (3, 12), (4, 60), (5, 60), (7, 168), (8, 504), (9, 360), (11, 660)])
def test_psl_orders(q, order):
    assert psl(q).order == order == expected_order(q, PSL)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 9])
def test_pgl_orders(q):
    assert pgl(q).order == q * (q * q - 1)


def test_identity_first_and_inverses(psl11):
    ctx = psl11
    assert np.array_equal(ctx.perms[0], np.arange(ctx.q + 1))
    ids = np.arange(ctx.order)
    assert (mul_ids(ctx, ids, ctx.inverses) == 0).all()
    assert (mul_ids(ctx, ctx.inverses, ids) == 0).all()


def test_product_is_right_action(psl7):
    ctx = psl7
    rng = np.random.default_rng(0)
    for a, b in rng.integers(0, ctx.order, size=(50, 2)):
        ab = mul(ctx, int(a), int(b))
        assert np.array_equal(ctx.perms[ab], ctx.perms[b][ctx.perms[a]])


def test_associativity_sample(psl9):
    ctx = psl9
    rng = np.random.default_rng(1)
    a, b, c = rng.integers(0, ctx.order, size=(3, 200))
    assert np.array_equal(mul_ids(ctx, mul_ids(ctx, a, b), c), mul_ids(ctx, a, mul_ids(ctx, b, c)))


def test_order_profiles(psl5, psl7):
    assert order_profile(psl5, np.arange(psl5.order)) == STRUCTURE_PROFILES["A5"]
    assert order_profile(psl7, np.arange(psl7.order)) == {1: 1, 2: 21, 3: 56, 4: 42, 7: 48}
    assert order_profile(pgl(5), np.arange(120)) == STRUCTURE_PROFILES["S5"]
    assert order_profile(pgl(3), np.arange(24)) == STRUCTURE_PROFILES["S4"]


def test_power_and_order(psl11):
    ctx = psl11
    for a in range(1, 40):
        n = int(ctx.orders[a])
        assert power(ctx, a, n) == 0
        assert all(power(ctx, a, k) != 0 for k in range(1, n))


def test_involution_classes():
    assert len(involution_classes(psl(11))) == 1
    assert involution_classes(psl(11))[0].size == 55
    assert involution_classes(psl(13))[0].size == 91
    assert len(involution_classes(pgl(7))) == 2
    assert len(involution_classes(psl(8))) == 1


def test_centralizer_of_involution_is_dihedral(psl11, psl13):
    assert centralizer(psl11, int(psl11.involutions[0])).order == 12
    assert centralizer(psl13, int(psl13.involutions[0])).order == 12


def test_elem_order_is_smallest_identity_power(psl7, psl9):
    for ctx in (psl7, psl9):
        for a in range(ctx.order):
            x, n = a, 1
            while x != 0:
                x = mul(ctx, x, a)
                n += 1
            assert elem_order(ctx, a) == n


@pytest.mark.parametrize("q", [5, 7, 9, 13])
def test_involutions_form_one_class(q):
    ctx = psl(q)
    classes = involution_classes(ctx)
    assert len(classes) == 1
    assert classes[0].size == ctx.involutions.size


def test_closure_is_idempotent(psl11):
    ctx = psl11
    rng = np.random.default_rng(5)
    for gens in rng.integers(1, ctx.order, size=(10, 2)):
        once = closure(ctx, gens.tolist())
        twice = closure(ctx, once.ids.tolist())
        assert np.array_equal(once.ids, twice.ids)


def test_centralizer_order_divides_group_order(psl11, psl13, psl9):
    for ctx in (psl11, psl13, psl9):
        for a in range(1, ctx.order, 7):
            cent = centralizer(ctx, a)
            assert ctx.order % cent.order == 0
            assert cent.contains(a)


def test_conjugate_many_matches_conj(psl9):
    ctx = psl9
    rng = np.random.default_rng(2)
    for a, g in rng.integers(0, ctx.order, size=(30, 2)):
        got = conjugate_many(ctx, [int(a)], ctx.perms[[int(g)]])[0, 0]
        assert got == conj(ctx, int(a), int(g))


def test_closure_and_cap(psl11):
    ctx = psl11
    t = int(ctx.involutions[0])
    assert closure(ctx, []).order == 1
    assert closure(ctx, [t]).order == 2
    whole = whole_group(ctx)
    g = int(np.flatnonzero(ctx.orders == 11)[0])
    assert generated_subgroup(ctx, [g, t]).order == 660
    capped = closure(ctx, np.arange(1, 20).tolist(), size_cap=10)
    assert capped.over_cap
    assert whole.contains(ctx.order - 1)


def test_max_proper_order():
    assert max_proper_order(psl(11)) == 60
    assert max_proper_order(psl(13)) == 78
    assert max_proper_order(psl(9)) == 60
    assert max_proper_order(pgl(7)) == 168


def test_normalizer_of_sylow_is_borel(psl11):
    ctx = psl11
    g = int(np.flatnonzero(ctx.orders == 11)[0])
    sylow = closure(ctx, [g])
    assert normalizer(ctx, sylow).order == 55


def test_frobenius_is_an_automorphism(psl9):
    ctx = psl9
    frob = frobenius(ctx)
    assert np.array_equal(frob.element_map[frob.element_map], np.arange(ctx.order))
    assert not np.array_equal(frob.element_map, np.arange(ctx.order))
    rng = np.random.default_rng(3)
    a, b = rng.integers(0, ctx.order, size=(2, 100))
    fm = frob.element_map
    assert np.array_equal(fm[mul_ids(ctx, a, b)], mul_ids(ctx, fm[a], fm[b]))


def test_frobenius_trivial_on_prime_field(psl7):
    assert np.array_equal(frobenius(psl7).element_map, np.arange(psl7.order))


def test_semilinear_conjugators_size(psl9, psl7):
    assert semilinear_conjugators(psl9).shape == (1440, 10)
    assert semilinear_conjugators(psl7).shape == (336, 8)


def test_build_group_guards():
    with pytest.raises(GroupError):
        build_group(field_new(131), PSL)
    with pytest.raises(GroupError):
        build_group(field_new(5), "SL")
    assert build_group(field_new(5), "psl").order == 60
    assert build_group(field_new(2, 2), PGL).order == 60
