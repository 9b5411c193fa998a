from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfdesign import (
    HalfSelection,
    PointSet,
    characteristic_matrix,
    construct_half,
    full_column_rank,
    gegenbauer,
    gegenbauer_gram,
    gegenbauer_moment,
    generate_roots,
    gram_orthogonality,
    is_harmonic_T_design,
    kernel_basis,
    local_search_half,
    search_index,
    sign_kernel_search,
    sum_vector,
    witness_to_half,
)
from halfdesign import designs
from halfdesign.exact import ExactMatrix


def direct_moment(X, i):
    """Oracle: plain double loop over exact inner products."""
    pts = [[c.a for c in v.coords] for v in X.points]
    n2 = sum(x * x for x in pts[0])
    cache = {}
    total = Fraction(0)
    for a in pts:
        for b in pts:
            t = sum(x * y for x, y in zip(a, b)) / n2
            if t not in cache:
                cache[t] = gegenbauer(len(a), i, t)
            total += cache[t]
    return total


# frozen from direct_moment on the constructed E8 half
E8_HALF_MOMENTS = {1: 0, 2: 0, 3: 7200, 4: 0, 5: 32400, 6: 0, 7: 90720}


def test_e8_half_moments_match_oracle(e8_half):
    for i, m in E8_HALF_MOMENTS.items():
        assert gegenbauer_moment(e8_half, i) == m
    for i in (3, 4):
        assert direct_moment(e8_half.points, i) == E8_HALF_MOMENTS[i]


def test_e8_is_7_design_not_8(e8):
    rep = is_harmonic_T_design(e8, range(1, 8))
    assert rep.is_design and rep.zero_indices() == list(range(1, 8))
    assert gegenbauer_moment(e8, 8) > 0


def test_moment_invariant_under_signed_permutation():
    X = generate_roots("D5")
    rng = np.random.default_rng(3)
    perm = rng.permutation(5)
    flip = rng.choice([-1, 1], size=5)
    Y = PointSet(X.numer[:, perm] * flip)
    signs = rng.choice([-1, 1], size=X.npairs)
    a = HalfSelection(X, signs)
    b = HalfSelection(PointSet(Y.numer, pairs=X.pairs), signs)
    for i in (1, 2, 3):
        assert gegenbauer_moment(a, i) == gegenbauer_moment(b, i)


def test_moment_invariant_under_point_order():
    X = generate_roots("A4")
    order = np.random.default_rng(5).permutation(len(X))
    Y = PointSet(X.numer[order])
    for i in (1, 2, 3, 4):
        assert gegenbauer_moment(X, i) == gegenbauer_moment(Y, i)


@settings(max_examples=30)
@given(st.data())
def test_zero_sum_iff_moment_one_zero(data):
    X = generate_roots(data.draw(st.sampled_from(["A2", "D4", "D5"])))
    base = construct_half(X.name)
    flips = data.draw(st.lists(st.integers(0, X.npairs - 1), max_size=3))
    sel = base
    for p in flips:
        sel = sel.flipped(p)
    assert sum_vector(sel).is_zero() == (gegenbauer_moment(sel, 1) == 0)


def test_histogram_thread_independence():
    X = generate_roots("D9")
    designs._DIST_CACHE.clear()
    one = designs.gram_histogram(X, threads=1)
    designs._DIST_CACHE.clear()
    assert designs.gram_histogram(X, threads=3) == one


def test_e8_index3_search(e8_half):
    res = sign_kernel_search(characteristic_matrix(e8_half, 3))
    assert (res.status, res.rank, res.kernel_dim, res.enumerated) == ("none", 112, 8, 128)


@pytest.mark.parametrize("name", ["A4", "D4", "D5"])
def test_found_witness_reverifies(name):
    sel = construct_half(name)
    H = characteristic_matrix(sel, 1)
    res = sign_kernel_search(H)
    assert res.status == "found"
    assert set(np.abs(res.witness).tolist()) == {1}
    assert not (res.witness.astype(object) @ H.rational_stack().numer).any()
    assert sum_vector(witness_to_half(sel, res.witness)).is_zero()
    # lowest index wins whatever the worker count
    again = sign_kernel_search(H, threads=3, batch_bits=2)
    assert np.array_equal(again.witness, res.witness) and again.enumerated == res.enumerated


def test_infeasible_above_kmax():
    sel = construct_half("D9")
    res = sign_kernel_search(characteristic_matrix(sel, 1), k_max=5)
    assert res.status == "infeasible" and res.kernel_dim == 72 - 9


def test_gram_route_matches_harmonic_kernel(e8_half):
    for i in (3, 5):
        H = characteristic_matrix(e8_half, i).rational_stack()
        assert kernel_basis(gegenbauer_gram(e8_half, i), "left") == kernel_basis(H, "left")
    r = search_index(e8_half, 5, route="gram")
    assert r.route == "gram" and r.result.status == "none" and r.result.kernel_dim == 8


def test_orthogonality_and_rank(e8_half):
    H1, H3, H5 = (characteristic_matrix(e8_half, i) for i in (1, 3, 5))
    assert gram_orthogonality(H1, H3) and gram_orthogonality(H1, H5)
    assert not gram_orthogonality(H1, H1)
    assert full_column_rank(H1) and full_column_rank(H3)
    assert not full_column_rank(H5)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_local_search_e8(e8, seed):
    sel = local_search_half(e8, seed=seed)
    assert sel is not None and sum_vector(sel).is_zero()
    assert np.array_equal(local_search_half(e8, seed=seed).signs, sel.signs)


def test_local_search_gives_up_on_a3():
    assert local_search_half(generate_roots("A3"), max_restarts=50) is None


def test_leech_high_index_reports_bound(leech_half):
    r = search_index(leech_half, 5)
    assert r.result.status == "infeasible" and not r.result.kernel_exact
    assert r.result.kernel_dim == 98280 - 95680
    r7 = search_index(leech_half, 7)
    assert r7.result.status == "infeasible" and r7.result.kernel_dim is None


def test_design_report_rejects_index_zero(e8):
    with pytest.raises(ValueError):
        is_harmonic_T_design(e8, [0, 1])
