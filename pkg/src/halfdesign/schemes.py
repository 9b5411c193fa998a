"""Inner-product relations, intersection numbers and the halving parity argument.

Relations are given by a ``ClassSpec``: an ordered list of normalized inner
products with ``1`` (the identity relation) first.  ``p[i, j, k]`` counts the
points z with ``<x, z>`` in class i and ``<z, y>`` in class j for a pair
(x, y) in class k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal

import numpy as np

from .designs import normalized_distribution
from .exact import as_fraction
from .points import HalfSelection, PointSet, as_pointset


@dataclass(frozen=True)
class ClassSpec:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_fraction(v) for v in self.values)
        if not vals or vals[0] != 1:
            raise ValueError("class 0 must be the identity relation (value 1)")
        if len(set(vals)) != len(vals):
            raise ValueError("class values must be distinct")
        object.__setattr__(self, "values", vals)

    @classmethod
    def parse(cls, text: str) -> "ClassSpec":
        return cls(tuple(Fraction(t) for t in text.replace(" ", "").split(",") if t))

    def __len__(self):
        return len(self.values)

    def with_antipode(self) -> "ClassSpec":
        return self if Fraction(-1) in self.values else ClassSpec(self.values + (Fraction(-1),))

    def negated_pairs(self) -> list[tuple[int, int]]:
        """Ordered (i, j), i != j, whose values are negatives of each other."""
        idx = {v: k for k, v in enumerate(self.values)}
        return [(i, idx[-v]) for i, v in enumerate(self.values) if v != 0 and -v in idx and idx[-v] != i]

    def __str__(self):
        return ",".join(str(v) for v in self.values)


# unnormalized root convention <x, y> = 2 - i
E8_SPEC = ClassSpec((Fraction(1), Fraction(1, 2), Fraction(0), Fraction(-1, 2), Fraction(-1)))
E8_HALF_SPEC = ClassSpec(E8_SPEC.values[:4])
LEECH_HALF_SPEC = ClassSpec(
    (Fraction(1), Fraction(0), Fraction(1, 4), Fraction(-1, 4), Fraction(1, 2), Fraction(-1, 2))
)
LEECH_SPEC = LEECH_HALF_SPEC.with_antipode()


class SpecCoverageError(ValueError):
    pass


def inner_distribution(X: PointSet | HalfSelection) -> dict[Fraction, int]:
    """Tally of normalized inner products over ordered pairs of distinct points."""
    P = as_pointset(X)
    dist = normalized_distribution(P)
    dist[Fraction(1)] -= len(P)
    return {v: c for v, c in sorted(dist.items()) if c}


def _class_lookup(X: PointSet, spec: ClassSpec) -> np.ndarray:
    n2 = X.scaled_norm2
    table = np.full(2 * n2 + 1, -1, dtype=np.int64)
    for k, v in enumerate(spec.values):
        scaled = v * n2
        if scaled.denominator == 1 and -n2 <= scaled <= n2:
            table[int(scaled) + n2] = k
    return table


def _classes(X: PointSet, rows, spec_table: np.ndarray, other: PointSet | None = None) -> np.ndarray:
    g = X.gram_block(rows, other)
    c = spec_table[g + X.scaled_norm2]
    if (c < 0).any():
        bad = Fraction(int(g[c < 0][0]), X.scaled_norm2)
        raise SpecCoverageError(f"inner product {bad} is not covered by the class spec")
    return c


@dataclass
class IntersectionTable:
    spec: ClassSpec
    values: np.ndarray  # (d, d, d) counts, -1 where class k never occurs
    well_defined: np.ndarray  # (d, d, d) bools
    mode: Literal["full", "sampled"]
    pairs_checked: dict[int, int] = field(default_factory=dict)

    def p(self, i: int, j: int, k: int) -> int:
        return int(self.values[i, j, k])

    def valency(self, i: int) -> int:
        return int(self.values[i, :, 0].sum())

    def rows(self) -> list[tuple[int, int, int, int, bool]]:
        d = len(self.spec)
        return [
            (i, j, k, int(self.values[i, j, k]), bool(self.well_defined[i, j, k]))
            for k in range(d)
            for i in range(d)
            for j in range(d)
            if self.values[i, j, k] >= 0
        ]


def _pair_counts(c_xz: np.ndarray, c_zy: np.ndarray, d: int) -> np.ndarray:
    return np.bincount(c_xz * d + c_zy, minlength=d * d).reshape(d, d)


def sample_pairs(X: PointSet, spec: ClassSpec, per_class: int = 4, anchors: Iterable[int] = (0, 1)) -> list[tuple[int, int, int]]:
    """Deterministic (x, y, k) sample: for each anchor x the first
    ``per_class`` points y of each class, scanning by index."""
    table = _class_lookup(X, spec)
    out = []
    for x in anchors:
        cls = _classes(X, [x], table)[0]
        for k in range(len(spec)):
            for y in np.flatnonzero(cls == k)[:per_class]:
                out.append((int(x), int(y), k))
    return out


def intersection_numbers(
    X: PointSet | HalfSelection,
    spec: ClassSpec,
    mode: Literal["full", "sampled"] = "full",
    samples: list[tuple[int, int, int]] | None = None,
) -> IntersectionTable:
    P = as_pointset(X)
    d = len(spec)
    table = _class_lookup(P, spec)
    values = np.full((d, d, d), -1, dtype=np.int64)
    well = np.zeros((d, d, d), dtype=bool)
    checked: dict[int, int] = {}
    if mode == "full":
        C = _classes(P, np.arange(len(P)), table)
        ind = [(C == i).astype(np.float64) for i in range(d)]
        for i in range(d):
            for j in range(d):
                counts = np.rint(ind[i] @ ind[j]).astype(np.int64)
                for k in range(d):
                    vals = counts[C == k]
                    if len(vals):
                        values[i, j, k] = vals[0]
                        well[i, j, k] = bool(np.all(vals == vals[0]))
        checked = {k: int((C == k).sum()) for k in range(d)}
    else:
        samples = samples if samples is not None else sample_pairs(P, spec)
        seen: dict[int, list[np.ndarray]] = {}
        for x, y, k in samples:
            cx = _classes(P, [x], table)[0]
            cy = _classes(P, [y], table)[0]
            if cx[y] != k:
                raise ValueError(f"sample pair ({x}, {y}) is not in class {k}")
            seen.setdefault(k, []).append(_pair_counts(cx, cy, d))
        for k, tabs in seen.items():
            stack = np.stack(tabs)
            values[:, :, k] = stack[0]
            well[:, :, k] = np.all(stack == stack[0], axis=0)
            checked[k] = len(tabs)
    return IntersectionTable(spec, values, well, mode, checked)


@dataclass(frozen=True)
class ParityWitness:
    i: int
    j: int
    k: int
    value: int
    well_defined: bool


def half_parity_obstruction(
    X: PointSet,
    spec: ClassSpec,
    mode: Literal["full", "sampled"] = "full",
    samples: list[tuple[int, int, int]] | None = None,
) -> list[ParityWitness]:
    """Triples (i, j, k) with -value_i = value_j and odd count in the full set.

    For any half H and x, y in H, the full-set count splits as
    p_ij(H) + p_ji(H); a symmetric scheme on H would make it even.
    """
    if X.pairs is None:
        raise ValueError("the parity argument needs the full antipodal set")
    full = spec.with_antipode()
    tab = intersection_numbers(X, full, mode, samples)
    half_classes = set(range(len(spec)))
    out = []
    for i, j in full.negated_pairs():
        if i not in half_classes or j not in half_classes:
            continue
        for k in half_classes:
            v = tab.values[i, j, k]
            if v >= 0 and v % 2 == 1:
                out.append(ParityWitness(i, j, k, int(v), bool(tab.well_defined[i, j, k])))
    return out


def check_halving_identity(sel: HalfSelection, spec: ClassSpec, pairs: list[tuple[int, int]] | None = None) -> bool:
    """Verify count_full(i, j) = count_half(i, j) + count_half(j, i) for all
    negated class pairs and all x, y in the half (or the given index pairs)."""
    full_spec = spec.with_antipode()
    X = sel.base
    Hp = sel.points
    table = _class_lookup(X, full_spec)
    negs = full_spec.negated_pairs()
    d = len(full_spec)
    if pairs is None:
        rows = np.arange(len(Hp))
        c_hf = _classes(Hp, rows, table, X)  # half x full
        c_hh = _classes(Hp, rows, table)
        for i, j in negs:
            full = np.rint((c_hf == i).astype(np.float64) @ (c_hf == j).astype(np.float64).T)
            hi = (c_hh == i).astype(np.float64)
            hj = (c_hh == j).astype(np.float64)
            if not np.array_equal(full, np.rint(hi @ hj.T + hj @ hi.T)):
                return False
        return True
    for x, y in pairs:
        fx = _classes(Hp, [x], table, X)[0]
        fy = _classes(Hp, [y], table, X)[0]
        hx = _classes(Hp, [x], table)[0]
        hy = _classes(Hp, [y], table)[0]
        full = _pair_counts(fx, fy, d)
        half = _pair_counts(hx, hy, d)
        for i, j in negs:
            if full[i, j] != half[i, j] + half[j, i]:
                return False
    return True
