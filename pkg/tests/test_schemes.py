from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfdesign import (
    ClassSpec,
    HalfSelection,
    check_halving_identity,
    generate_roots,
    half_parity_obstruction,
    intersection_numbers,
)
from halfdesign.cli import cross_polytope
from halfdesign.schemes import E8_HALF_SPEC, E8_SPEC, SpecCoverageError, inner_distribution, sample_pairs


def naive_table(X, spec):
    """Oracle: triple loop; returns {(i, j, k): set of counts seen}."""
    n = len(X)
    cls = {v: c for c, v in enumerate(spec.values)}
    C = [[cls[X.inner(a, b)] for b in range(n)] for a in range(n)]
    seen = {}
    for x in range(n):
        for y in range(n):
            k = C[x][y]
            counts = {}
            for z in range(n):
                key = (C[x][z], C[z][y])
                counts[key] = counts.get(key, 0) + 1
            for i in range(len(spec)):
                for j in range(len(spec)):
                    seen.setdefault((i, j, k), set()).add(counts.get((i, j), 0))
    return seen


@pytest.mark.parametrize("name, spec", [
    ("D4", ClassSpec((1, Fraction(1, 2), 0, Fraction(-1, 2), -1))),
    ("cross3", ClassSpec((1, 0, -1))),
])
def test_full_mode_matches_naive(name, spec):
    X = cross_polytope(3) if name == "cross3" else generate_roots(name)
    tab = intersection_numbers(X, spec)
    for (i, j, k), vals in naive_table(X, spec).items():
        assert tab.well_defined[i, j, k] == (len(vals) == 1)
        if len(vals) == 1:
            assert tab.p(i, j, k) == next(iter(vals))


def test_e8_table(e8):
    tab = intersection_numbers(e8, E8_SPEC)
    assert [tab.valency(i) for i in range(5)] == [1, 56, 126, 56, 1]
    assert tab.well_defined[tab.values >= 0].all()
    assert tab.p(1, 3, 1) == 1


def test_e8_witnesses(e8):
    w = {(x.i, x.j, x.k): x.value for x in half_parity_obstruction(e8, E8_HALF_SPEC)}
    assert w[(1, 3, 1)] == 1
    assert w == {(1, 3, 1): 1, (3, 1, 1): 1, (1, 3, 3): 27, (3, 1, 3): 27}


def test_sampled_agrees_with_full(e8):
    full = intersection_numbers(e8, E8_SPEC)
    samp = intersection_numbers(e8, E8_SPEC, "sampled")
    for k in samp.pairs_checked:
        assert np.array_equal(samp.values[:, :, k], full.values[:, :, k])


def test_sample_pairs_deterministic(e8):
    a = sample_pairs(e8, E8_SPEC)
    assert a == sample_pairs(e8, E8_SPEC)
    assert {k for _, _, k in a} == set(range(5))


def test_cross_polytope_has_no_witnesses():
    assert half_parity_obstruction(cross_polytope(4), ClassSpec((1, 0))) == []


@settings(max_examples=10)
@given(st.lists(st.sampled_from([-1, 1]), min_size=120, max_size=120))
def test_halving_identity_any_e8_half(signs):
    assert check_halving_identity(HalfSelection(generate_roots("E8"), signs), E8_HALF_SPEC)


def test_halving_identity_pairs_mode(e8_half):
    pairs = [(0, 1), (3, 70), (119, 5)]
    assert check_halving_identity(e8_half, E8_HALF_SPEC, pairs)


def test_spec_coverage_error(e8):
    with pytest.raises(SpecCoverageError):
        intersection_numbers(e8, ClassSpec((1, 0, -1)))


def test_class_spec_validation():
    with pytest.raises(ValueError):
        ClassSpec((0, 1))
    with pytest.raises(ValueError):
        ClassSpec((1, 0, 0))
    s = ClassSpec.parse("1, 1/2, 0")
    assert s.with_antipode().values[-1] == -1
    assert ClassSpec.parse("1,1/2,-1/2").negated_pairs() == [(1, 2), (2, 1)]


def test_inner_distribution_excludes_diagonal():
    d = inner_distribution(cross_polytope(2))
    assert d == {Fraction(-1): 4, Fraction(0): 8}


def test_leech_witness_sampled(leech):
    from halfdesign.schemes import LEECH_HALF_SPEC

    w = {(x.i, x.j, x.k): x.value for x in half_parity_obstruction(leech, LEECH_HALF_SPEC, "sampled")}
    assert w[(4, 5, 4)] % 2 == 1
