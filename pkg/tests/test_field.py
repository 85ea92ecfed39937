import numpy as np
import pytest

from src.errors import FieldError
from src.field import (
    elem, elements, field_new, frobenius_map, from_label, inv, is_square, label, mul, neg,
    one, power, tables, zero,
)


def test_modulus_is_lex_smallest_irreducible():
    assert field_new(7).modulus == (0, 1)
    assert field_new(2, 2).modulus == (1, 1, 1)
    assert field_new(3, 2).modulus == (1, 0, 1)
    assert field_new(5, 2).modulus == (1, 1, 1)
    assert field_new(2, 3).modulus == (1, 0, 1, 1)


def test_field_new_rejects_bad_input():
    with pytest.raises(FieldError):
        field_new(4)
    with pytest.raises(FieldError):
        field_new(3, 0)
    with pytest.raises(FieldError):
        field_new(2, 21)


def test_field_new_is_cached():
    assert field_new(3, 2) is field_new(3, 2)


def test_inverse_of_every_nonzero_element():
    for spec in (field_new(7), field_new(3, 2), field_new(2, 3)):
        for a in elements(spec)[1:]:
            assert mul(a, inv(a)) == one(spec)
            assert a / a == one(spec)
    with pytest.raises(FieldError):
        inv(zero(field_new(5)))


def test_multiplicative_group_order():
    spec = field_new(5, 2)
    for a in elements(spec)[1:]:
        assert power(a, spec.q - 1) == one(spec)
    x = elem(spec, (0, 1))
    assert power(x, -1) == inv(x)


def test_generator_squares_to_modulus_root():
    spec = field_new(3, 2)
    x = elem(spec, (0, 1))
    assert x * x == neg(one(spec))
    assert label(x * x) == 2


def test_is_square():
    spec = field_new(7)
    squares = {label(a) for a in elements(spec)[1:] if is_square(a)}
    assert squares == {1, 2, 4}
    with pytest.raises(FieldError):
        is_square(zero(spec))
    with pytest.raises(FieldError):
        is_square(one(field_new(2, 2)))


def test_frobenius_has_order_r():
    spec = field_new(2, 3)
    for a in elements(spec):
        b = a
        for _ in range(spec.r):
            b = frobenius_map(b)
        assert b == a
    x = elem(spec, (0, 1))
    assert frobenius_map(x) == x * x


def test_labels_follow_element_order():
    spec = field_new(3, 2)
    assert [label(a) for a in elements(spec)] == list(range(9))
    assert from_label(spec, 4).coeffs == (1, 1)
    with pytest.raises(FieldError):
        from_label(spec, 9)


def test_tables_agree_with_arithmetic():
    spec = field_new(2, 3)
    t = tables(spec)
    els = elements(spec)
    for a in els:
        for b in els:
            assert t.mul[label(a), label(b)] == label(a * b)
            assert t.add[label(a), label(b)] == label(a + b)
    assert t.inv[0] == -1
    assert all(t.mul[n, t.inv[n]] == 1 for n in range(1, spec.q))


def test_square_table_counts_half_the_units():
    t = tables(field_new(5, 2))
    assert int(t.square.sum()) == 12
    assert not t.square[0]


def test_tables_refuse_large_fields():
    with pytest.raises(FieldError):
        tables(field_new(131))
    assert np.array_equal(tables(field_new(5)).neg, [0, 4, 3, 2, 1])
