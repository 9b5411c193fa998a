from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from halfdesign import HalfSelection, PointSet, generate_roots
from halfdesign.exact import ExactVector, inner_product

families = st.one_of(
    st.builds(lambda l: f"A{l}", st.integers(1, 7)),
    st.builds(lambda n: f"D{n}", st.integers(3, 8)),
    st.sampled_from(["E6", "E7", "E8"]),
)


@given(families)
def test_antipodal_closure_and_equal_norms(name):
    X = generate_roots(name)
    X.validate()
    keys = {tuple(v.coords) for v in X.points}
    assert all(tuple((-v).coords) in keys for v in X.points)
    assert {inner_product(v, v) for v in X.points} == {2}
    assert X.norm2 == 2


@given(families, st.data())
def test_gram_block_matches_inner_product(name, data):
    X = generate_roots(name)
    i = data.draw(st.integers(0, len(X) - 1))
    j = data.draw(st.integers(0, len(X) - 1))
    assert X.inner(i, j) * X.norm2 == inner_product(X.vector(i), X.vector(j))


@given(families, st.data())
def test_selection_round_trip(name, data):
    X = generate_roots(name)
    signs = data.draw(st.lists(st.sampled_from([-1, 1]), min_size=X.npairs, max_size=X.npairs))
    sel = HalfSelection(X, signs)
    again = HalfSelection.from_indices(X, sel.indices)
    assert np.array_equal(again.signs, sel.signs)
    p = data.draw(st.integers(0, X.npairs - 1))
    f = sel.flipped(p)
    assert f.signs[p] == -sel.signs[p] and (np.delete(f.signs, p) == np.delete(sel.signs, p)).all()


def test_find_pairs_recovers_generated_pairing():
    X = generate_roots("D5")
    assert np.array_equal(X.find_pairs(), X.pairs)


def test_unequal_norms_rejected():
    with pytest.raises(ValueError):
        PointSet(np.array([[1, 0], [1, 1]]))


def test_broken_pairing_detected():
    X = generate_roots("A2")
    bad = PointSet(X.numer, pairs=X.pairs[:, ::-1][[1, 0, 2]].copy())
    bad.pairs[0] = [0, 1]
    with pytest.raises(ValueError):
        bad.validate()


def test_missing_antipode_detected():
    with pytest.raises(ValueError):
        PointSet.from_vectors([ExactVector((1, 0)), ExactVector((0, 1))])


def test_selection_rejects_double_pick():
    X = generate_roots("A2")
    with pytest.raises(ValueError):
        HalfSelection.from_indices(X, [0, 3, 1])


def test_quadratic_points_have_rational_gram():
    X = generate_roots("E6")
    assert X.is_quadratic
    assert {X.inner(0, j) for j in range(len(X))} == {Fraction(k, 2) for k in (-2, -1, 0, 1, 2)}
