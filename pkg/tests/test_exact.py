from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from halfdesign.exact import (
    ExactMatrix,
    ExactVector,
    QuadraticScalar,
    format_fraction,
    format_quadratic,
    fraction_gcd,
    inner_product,
    int_matmul,
    parse_scalar,
)

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**6)
quads = st.builds(QuadraticScalar, fractions, fractions)


@given(quads, quads, quads)
def test_quadratic_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a - a == QuadraticScalar(0)
    assert -(-a) == a


def test_sqrt3_squares_to_three():
    r = QuadraticScalar(0, 1)
    assert r * r == QuadraticScalar(3)
    assert (r * r).is_rational


@given(quads)
def test_token_round_trip(x):
    assert parse_scalar(format_quadratic(x)) == x
    if x.is_rational:
        assert parse_scalar(format_fraction(x.a)) == x


@pytest.mark.parametrize("tok, a, b", [("1/2-3/4~3", Fraction(1, 2), Fraction(-3, 4)), ("-1+1~3", -1, 1), ("-2/3", Fraction(-2, 3), 0)])
def test_parse_examples(tok, a, b):
    assert parse_scalar(tok) == QuadraticScalar(a, b)


def test_fraction_gcd():
    assert fraction_gcd([Fraction(1, 2), Fraction(3, 4)]) == Fraction(1, 4)
    assert fraction_gcd([Fraction(6), Fraction(10)]) == 2


def test_inner_product_dimension_mismatch():
    with pytest.raises(ValueError):
        inner_product(ExactVector((1, 2)), ExactVector((1, 2, 3)))


def test_vector_ops():
    v = ExactVector((1, Fraction(1, 2), QuadraticScalar(0, 1)))
    assert (v - v).is_zero()
    assert inner_product(v, v) == QuadraticScalar(Fraction(1) + Fraction(1, 4) + 3)
    assert inner_product(ExactVector.basis(3, 1), v) == Fraction(1, 2)


small = st.integers(-20, 20)


@given(st.lists(st.lists(fractions, min_size=3, max_size=3), min_size=1, max_size=4))
def test_matrix_normal_form(rows):
    m = ExactMatrix.from_rows(rows)
    assert m.to_rows() == [[Fraction(x) for x in r] for r in rows]
    # common denominator is reduced
    g = np.gcd.reduce(np.append(np.abs(m.numer.astype(object)).ravel(), m.denom).astype(np.int64))
    assert g == 1
    assert m.transpose().transpose() == m


@given(
    st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5),
    st.lists(st.lists(small, min_size=3, max_size=3), min_size=4, max_size=4),
)
def test_matmul_matches_python(a, b):
    A, B = np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)
    ref = [[sum(x * y for x, y in zip(r, c)) for c in zip(*b)] for r in a]
    assert int_matmul(A, B).tolist() == ref
    assert (ExactMatrix(A) @ ExactMatrix(B)).to_rows() == ref


def test_int_matmul_large_entries_stay_exact():
    big = 2**40 + 1
    A = np.array([[big, big]], dtype=object)
    B = np.array([[big], [-big + 3]], dtype=object)
    assert int_matmul(A, B)[0, 0] == big * big + big * (-big + 3)
