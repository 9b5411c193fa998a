"""Extended Golay code, Leech minimal vectors and the 4600-point 7-design.

Icosahedron labeling used for ``P = J - A``: vertex 0 is the north pole,
1..5 the upper pentagon, 6..10 the lower pentagon (6 + k sits below the edge
between 1 + k and 1 + (k+1) % 5), 11 the south pole.  Any labeling gives an
equivalent code; the code is validated by its parameters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .points import Chart, HalfSelection, PointSet
from .roots import _d_positive, _d_signs

N = 24
LEECH_NORM2 = 32
TIGHT7_AXIS = (4, 4) + (0,) * 22


def icosahedron_adjacency() -> np.ndarray:
    a = np.zeros((12, 12), dtype=np.int64)

    def join(i, j):
        a[i, j] = a[j, i] = 1

    for k in range(5):
        up, up_next = 1 + k, 1 + (k + 1) % 5
        lo, lo_next = 6 + k, 6 + (k + 1) % 5
        join(0, up)
        join(11, lo)
        join(up, up_next)
        join(lo, lo_next)
        join(up, lo)
        join(up_next, lo)
    return a


@dataclass(frozen=True)
class GolayCode:
    generator: np.ndarray  # 12 x 24 bits
    codewords: np.ndarray  # 4096 x 24 bits; row m encodes message bits of m (big-endian)

    def weights(self) -> np.ndarray:
        return self.codewords.sum(axis=1)

    def weight_distribution(self) -> dict[int, int]:
        w, c = np.unique(self.weights(), return_counts=True)
        return {int(a): int(b) for a, b in zip(w, c)}

    def octads(self) -> list[tuple[int, ...]]:
        rows = self.codewords[self.weights() == 8]
        return sorted(tuple(int(i) for i in np.flatnonzero(r)) for r in rows)

    def index_of(self, word) -> int:
        return _word_index(self)[np.asarray(word, dtype=np.uint8).tobytes()]

    def complement_index(self) -> np.ndarray:
        """comp[m] = index of the complement of codeword m."""
        lookup = _word_index(self)
        return np.array([lookup[(1 - w).astype(np.uint8).tobytes()] for w in self.codewords])


@lru_cache(maxsize=4)
def _word_index(code: GolayCode) -> dict[bytes, int]:
    return {w.astype(np.uint8).tobytes(): m for m, w in enumerate(code.codewords)}


@lru_cache(maxsize=1)
def generate_golay() -> GolayCode:
    p = 1 - icosahedron_adjacency()
    g = np.hstack([np.eye(12, dtype=np.int64), p])
    msgs = np.array(list(itertools.product((0, 1), repeat=12)), dtype=np.int64)
    words = (msgs @ g) % 2
    g.setflags(write=False)
    words.setflags(write=False)
    return GolayCode(g, words)


def golay_half_mask(code: GolayCode) -> np.ndarray:
    """Codewords whose first three bits are 111, 100, 010 or 001."""
    head = code.codewords[:, :3]
    return head.sum(axis=1) % 2 == 1


def golay_half(code: GolayCode | None = None) -> np.ndarray:
    """The 2048 selected codewords, one from each complementary pair."""
    code = code or generate_golay()
    return code.codewords[golay_half_mask(code)]


# Leech minimal vectors ---------------------------------------------------------------


@dataclass(frozen=True)
class LeechBlocks:
    """Row ranges of the positive representatives by type."""

    a: range
    b: range
    c: range
    octads: tuple[tuple[int, ...], ...]
    c_words: np.ndarray  # codeword index of each type-c representative, per position
    c_position: np.ndarray


def _leech_positive(code: GolayCode):
    a = _d_positive(N, scale=4)
    octads = code.octads()
    b = []
    spins = [c for c in itertools.product((1, -1), repeat=8) if c[0] == 1 and np.prod(c) == 1]
    for oc in octads:
        for c in spins:
            v = [0] * N
            for pos, s in zip(oc, c):
                v[pos] = 2 * s
            b.append(v)
    reps = np.flatnonzero(code.codewords[:, 0] == 0)  # one word of each complementary pair
    signs = 1 - 2 * code.codewords[reps]
    c_rows, c_words, c_pos = [], [], []
    for j in range(N):
        block = signs.copy()
        block[:, j] *= -3
        c_rows.append(block)
        c_words.append(reps)
        c_pos.append(np.full(len(reps), j))
    c = np.vstack(c_rows)
    pos = np.vstack([np.array(a, dtype=np.int64), np.array(b, dtype=np.int64), c])
    blocks = LeechBlocks(
        range(0, len(a)),
        range(len(a), len(a) + len(b)),
        range(len(a) + len(b), len(pos)),
        tuple(octads),
        np.concatenate(c_words),
        np.concatenate(c_pos),
    )
    return pos, blocks


@lru_cache(maxsize=1)
def _leech_cached():
    code = generate_golay()
    pos, blocks = _leech_positive(code)
    m = len(pos)
    pairs = np.stack([np.arange(m), np.arange(m) + m], axis=1)
    X = PointSet(np.vstack([pos, -pos]), pairs=pairs, name="leech")
    X.numer.setflags(write=False)
    return X, blocks


def generate_leech_min() -> PointSet:
    """The 196560 minimal vectors at integer scale (squared norm 32)."""
    return _leech_cached()[0]


def leech_blocks() -> LeechBlocks:
    return _leech_cached()[1]


def leech_type_counts() -> dict[str, int]:
    b = leech_blocks()
    return {"a": 2 * len(b.a), "b": 2 * len(b.b), "c": 2 * len(b.c)}


def construct_leech_half() -> HalfSelection:
    X, blocks = _leech_cached()
    code = generate_golay()
    signs = np.empty(X.npairs, dtype=np.int8)
    signs[blocks.a.start:blocks.a.stop] = _d_signs(N)
    # type b: (c_1, c_2, c_3) rule on the three smallest octad positions
    b_rows = X.numer[blocks.b.start:blocks.b.stop]
    lead = np.array([oc[:3] for oc in blocks.octads for _ in range(64)])
    c123 = np.take_along_axis(b_rows, lead, axis=1) // 2
    signs[blocks.b.start:blocks.b.stop] = np.where(c123.prod(axis=1) == 1, 1, -1)
    # type c: keep the representative when its codeword lies in the Golay half
    keep = golay_half_mask(code)[blocks.c_words]
    signs[blocks.c.start:blocks.c.stop] = np.where(keep, 1, -1)
    return HalfSelection(X, signs)


# tight 7-design on S^22 ----------------------------------------------------------------


@lru_cache(maxsize=1)
def construct_tight7() -> PointSet:
    """Minimal vectors at inner product 16 (cosine 1/2) with u = (4,4,0,...), shifted by -u/2.

    The result lives in the hyperplane x_0 + x_1 = 0; its chart keeps axes
    0, 2, ..., 23 with metric weights (2, 1, ..., 1).
    """
    L = generate_leech_min()
    u = np.array(TIGHT7_AXIS, dtype=np.int64)
    sel = L.numer[(L.numer @ u) == 16]
    if len(sel) != 4600:
        raise RuntimeError(f"expected 4600 neighbours of u, found {len(sel)}")
    y = sel - u // 2
    tmp = PointSet(y)
    pairs = tmp.find_pairs()
    numer = np.vstack([y[pairs[:, 0]], y[pairs[:, 1]]])
    m = len(pairs)
    chart = Chart((0,) + tuple(range(2, N)), (2,) + (1,) * (N - 2))
    X = PointSet(
        numer,
        pairs=np.stack([np.arange(m), np.arange(m) + m], axis=1),
        chart=chart,
        name="tight7",
    )
    X.numer.setflags(write=False)
    return X
