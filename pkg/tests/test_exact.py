from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from boolcum.exact import (
    DimensionError,
    MatrixB,
    OrderMismatchError,
    TruncatedSeries,
    basis,
    format_scalar,
    parse_scalar,
    scalar,
    scalar_inv,
    series_mul,
)

rationals = st.fractions(max_denominator=50).map(lambda f: mpq(f.numerator, f.denominator))
nonzero = rationals.filter(lambda q: q != 0)


def matrices(d=2):
    return st.lists(st.lists(rationals, min_size=d, max_size=d), min_size=d, max_size=d).map(MatrixB)


def series(n=4):
    return st.lists(rationals, min_size=n, max_size=n).map(TruncatedSeries)


def test_scalar_coercion():
    assert scalar(Fraction(1, 3)) == mpq(1, 3)
    assert scalar(4) == 4
    with pytest.raises(TypeError):
        scalar(0.5)
    with pytest.raises(TypeError):
        scalar(True)
    with pytest.raises(ZeroDivisionError):
        scalar_inv(0)


@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(nonzero)
def test_inverse(a):
    assert a * scalar_inv(a) == 1


@given(rationals)
def test_scalar_serialization_roundtrip(a):
    text = format_scalar(a)
    assert parse_scalar(text) == a
    assert format_scalar(parse_scalar(text)) == text


def test_scalar_format():
    assert format_scalar(mpq(6, 4)) == "3/2"
    assert format_scalar(mpq(-4, 2)) == "-2"
    assert parse_scalar(7) == 7


@pytest.mark.parametrize("bad", ["1.5", "a", "1/0", "", "1//2"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_parse_rejects_float():
    with pytest.raises(TypeError):
        parse_scalar(0.5)


@given(matrices(), matrices(), matrices())
def test_matrix_ring_axioms(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + c) == a @ b + a @ c
    assert (a + b) @ c == a @ c + b @ c
    assert a @ MatrixB.identity(2) == a == MatrixB.identity(2) @ a
    assert a + MatrixB.zero(2) == a
    assert a - a == MatrixB.zero(2)


def test_matrix_units_do_not_commute():
    E12, E21 = MatrixB.unit(2, 0, 1), MatrixB.unit(2, 1, 0)
    assert E12 @ E21 == MatrixB.unit(2, 0, 0)
    assert E21 @ E12 == MatrixB.unit(2, 1, 1)
    assert E12 @ E21 != E21 @ E12


def test_matrix_fast_paths_agree_with_general_product(rng):
    dense = MatrixB([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
    for e in basis(3):
        for a, b in ((e, dense), (dense, e)):
            rows = [[sum(a[i, k] * b[k, j] for k in range(3)) for j in range(3)] for i in range(3)]
            assert a @ b == MatrixB(rows)


def test_matrix_dimension_errors():
    with pytest.raises(DimensionError):
        MatrixB.identity(2) + MatrixB.identity(3)
    with pytest.raises((DimensionError, ValueError)):
        MatrixB([[1, 2], [3]])


@given(matrices())
def test_matrix_json_roundtrip(a):
    assert MatrixB.from_json(a.to_json()) == a
    assert hash(MatrixB.from_json(a.to_json())) == hash(a)


def test_matrix_scalars():
    a = MatrixB([[1, 2], [3, 4]])
    assert a * 2 == 2 * a == a.scale(2) == MatrixB([[2, 4], [6, 8]])
    assert a.unit_index is None
    assert MatrixB.unit(2, 1, 0).unit_index == 2


@given(series(), series(), series())
def test_series_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert f * TruncatedSeries.one(4) == f


def test_series_examples():
    assert series_mul(TruncatedSeries([1, 1, 0]), TruncatedSeries([1, -1, 0])) == TruncatedSeries([1, 0, -1])
    z = TruncatedSeries([0, 1])
    assert z * z == TruncatedSeries.zero(2)
    assert TruncatedSeries([1, 2, 3]).shift_up() == TruncatedSeries([0, 1, 2])


def test_series_order_mismatch():
    with pytest.raises(OrderMismatchError):
        TruncatedSeries([1, 2]) + TruncatedSeries([1, 2, 3])
    with pytest.raises(OrderMismatchError):
        TruncatedSeries([1, 2]) * TruncatedSeries([1, 2, 3])


@given(series())
def test_series_json_roundtrip(f):
    data = f.to_json()
    assert data["order"] == 4
    assert TruncatedSeries.from_json(data) == f
