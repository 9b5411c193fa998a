import itertools
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from halfdesign import PointSet, generate_roots
from halfdesign.exact import ExactVector, QuadraticScalar
from halfdesign.io import (
    FormatError,
    SelectionFile,
    dump_report,
    format_pointset,
    format_selection,
    jsonable,
    parse_pointset,
    parse_selection,
)


@pytest.mark.parametrize("name", ["A3", "D5", "E6", "E7", "E8"])
def test_pointset_round_trip(name):
    X = generate_roots(name)
    text = format_pointset(X)
    Y = parse_pointset(text)
    assert format_pointset(Y) == text
    assert np.array_equal(Y.pairs, X.pairs)
    assert Y.norm2 == X.norm2


def test_chart_round_trip(tight7):
    text = format_pointset(tight7)
    assert "chart 0:2 2:1" in text
    Y = parse_pointset(text)
    assert Y.chart == tight7.chart and format_pointset(Y) == text


coords = st.fractions(min_value=-3, max_value=3, max_denominator=6)


@given(st.lists(coords, min_size=2, max_size=4), st.booleans())
def test_random_signed_permutation_sets_round_trip(v, quad):
    vals = [QuadraticScalar(x, x if quad and k == 0 else 0) for k, x in enumerate(v)]
    pts = set()
    for perm in itertools.islice(itertools.permutations(vals), 6):
        pts.add(perm)
        pts.add(tuple(-c for c in perm))
    if all(c == 0 for c in vals):
        return
    X = PointSet.from_vectors([ExactVector(p) for p in sorted(pts, key=str)], pair=False)
    text = format_pointset(X)
    assert format_pointset(parse_pointset(text)) == text


def test_unnormalised_tokens_normalise():
    text = "# halfdesign pointset\ndim 2\nnorm2 1\nfield rat\ncount 2\n2/2 0/5\n-3/3 0\n"
    X = parse_pointset(text)
    out = format_pointset(X)
    assert out.splitlines()[-2:] == ["1 0", "-1 0"]
    assert format_pointset(parse_pointset(out)) == out


@pytest.mark.parametrize("text", [
    "# wrong\n",
    "# halfdesign pointset\ndim 2\nnorm2 1\nfield rat\ncount 3\n1 0\n-1 0\n",
    "# halfdesign pointset\ndim 2\nnorm2 1\nfield rat\ncount 1\n1 0 0\n",
    "# halfdesign pointset\ndim 1\nnorm2 1\nfield rat\ncount 1\n1+0~3\n",
    "# halfdesign pointset\ndim 1\nnorm2 4\nfield rat\ncount 1\n1\n",
    "# halfdesign pointset\ndim 1\nnorm2 1\nfield complex\ncount 1\n1\n",
])
def test_malformed_pointsets(text):
    with pytest.raises(FormatError):
        parse_pointset(text)


@given(st.lists(st.integers(0, 10**6), max_size=30), st.sampled_from(["E8", "leech"]), st.sampled_from([None, "x.pts"]))
def test_selection_round_trip(idx, target, base):
    sf = SelectionFile(target, np.array(idx, dtype=np.int64), base)
    back = parse_selection(format_selection(sf))
    assert back.target == target and back.base == base and back.indices.tolist() == idx


def test_report_values_are_exact_strings():
    rep = {"moment": Fraction(7200), "ratio": Fraction(-1, 3), "q": QuadraticScalar(1, Fraction(1, 2)),
           "idx": np.arange(3), "n": np.int64(5)}
    d = json.loads(dump_report(rep))
    assert d == {"moment": "7200", "ratio": "-1/3", "q": "1+1/2~3", "idx": [0, 1, 2], "n": 5}
    assert jsonable({1: Fraction(1, 2)}) == {"1": "1/2"}
