"""Antipodal point sets and half selections.

Coordinates are held as ``(numer + sqrt(3) * irr) / denom`` with integer
arrays, which keeps the 196560 Leech vectors in a few megabytes while staying
exact.  Individual points come back as :class:`ExactVector` on request.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .exact import ExactVector, QuadraticScalar, as_fraction


@dataclass(frozen=True)
class Chart:
    """Intrinsic coordinates for sets living in a proper subspace.

    Intrinsic coordinate ``k`` is ambient coordinate ``axes[k]``; the ambient
    inner product restricted to the subspace is ``sum_k weights[k] y_k y'_k``.
    """

    axes: tuple[int, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(as_fraction(w) for w in self.weights))
        if len(self.axes) != len(self.weights):
            raise ValueError("chart axes and weights differ in length")
        if any(w <= 0 for w in self.weights):
            raise ValueError("chart weights must be positive")


class PointSet:
    """A finite list of equal-norm vectors with optional antipodal pairing."""

    def __init__(
        self,
        numer,
        denom: int = 1,
        irr=None,
        pairs=None,
        chart: Chart | None = None,
        name: str = "",
    ):
        self.numer = np.ascontiguousarray(numer, dtype=np.int64)
        if self.numer.ndim != 2:
            raise ValueError("coordinates must form a 2-d array")
        self.irr = None if irr is None else np.ascontiguousarray(irr, dtype=np.int64)
        if self.irr is not None and not self.irr.any():
            self.irr = None
        if self.irr is not None and self.irr.shape != self.numer.shape:
            raise ValueError("irrational part has the wrong shape")
        self.denom = int(denom)
        self.pairs = None if pairs is None else np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        self.chart = chart
        self.name = name
        sq = self.scaled_norms()
        if len(sq) and not np.all(sq == sq[0]):
            raise ValueError("points do not share a common norm")

    # construction -----------------------------------------------------------------

    @classmethod
    def from_vectors(cls, vectors, *, pair: bool = True, chart: Chart | None = None, name: str = "") -> "PointSet":
        vectors = [v if isinstance(v, ExactVector) else ExactVector(tuple(v)) for v in vectors]
        if not vectors:
            raise ValueError("empty point set")
        dim = vectors[0].dim
        den = 1
        for v in vectors:
            if v.dim != dim:
                raise ValueError("mixed dimensions")
            for c in v.coords:
                den = np.lcm(den, np.lcm(c.a.denominator, c.b.denominator))
        den = int(den)
        numer = np.array([[int(c.a * den) for c in v.coords] for v in vectors], dtype=np.int64)
        irr = np.array([[int(c.b * den) for c in v.coords] for v in vectors], dtype=np.int64)
        ps = cls(numer, den, irr, chart=chart, name=name)
        if pair:
            ps.pairs = ps.find_pairs()
        return ps

    def find_pairs(self) -> np.ndarray:
        """Pair every point with its negation (first occurrence first)."""
        keys = {self._key(i): i for i in range(len(self))}
        if len(keys) != len(self):
            raise ValueError("duplicate points")
        seen = np.zeros(len(self), dtype=bool)
        pairs = []
        for i in range(len(self)):
            if seen[i]:
                continue
            j = keys.get(self._key(i, negate=True))
            if j is None or j == i:
                raise ValueError(f"point {i} has no antipode")
            seen[i] = seen[j] = True
            pairs.append((i, j))
        return np.array(pairs, dtype=np.int64).reshape(-1, 2)

    def _key(self, i: int, negate: bool = False) -> bytes:
        s = -1 if negate else 1
        a = (s * self.numer[i]).tobytes()
        return a if self.irr is None else a + (s * self.irr[i]).tobytes()

    # basic properties -------------------------------------------------------------

    def __len__(self) -> int:
        return self.numer.shape[0]

    @property
    def dim(self) -> int:
        return self.numer.shape[1]

    @property
    def sphere_dim(self) -> int:
        """Dimension n of the sphere S^(n-1) the points span."""
        return len(self.chart.axes) if self.chart else self.dim

    @property
    def is_quadratic(self) -> bool:
        return self.irr is not None

    def scaled_norms(self) -> np.ndarray:
        sq = (self.numer * self.numer).sum(axis=1)
        if self.irr is not None:
            sq = sq + 3 * (self.irr * self.irr).sum(axis=1)
        return sq

    @cached_property
    def scaled_norm2(self) -> int:
        """Squared norm times denom**2 (an integer)."""
        return int(self.scaled_norms()[0]) if len(self) else 0

    @property
    def norm2(self) -> Fraction:
        return Fraction(self.scaled_norm2, self.denom**2)

    @property
    def npairs(self) -> int:
        return 0 if self.pairs is None else len(self.pairs)

    def vector(self, i: int) -> ExactVector:
        d = self.denom
        if self.irr is None:
            return ExactVector(tuple(Fraction(int(a), d) for a in self.numer[i]))
        return ExactVector(
            tuple(QuadraticScalar(Fraction(int(a), d), Fraction(int(b), d)) for a, b in zip(self.numer[i], self.irr[i]))
        )

    @property
    def points(self) -> list[ExactVector]:
        return [self.vector(i) for i in range(len(self))]

    def subset(self, indices, name: str = "") -> "PointSet":
        idx = np.asarray(indices, dtype=np.int64)
        return PointSet(
            self.numer[idx],
            self.denom,
            None if self.irr is None else self.irr[idx],
            chart=self.chart,
            name=name or self.name,
        )

    def intrinsic(self) -> tuple[np.ndarray, np.ndarray | None]:
        """Integer coordinates in the chart (or ambient ones)."""
        if self.chart is None:
            return self.numer, self.irr
        ax = list(self.chart.axes)
        return self.numer[:, ax], None if self.irr is None else self.irr[:, ax]

    # exact inner products -----------------------------------------------------------

    def gram_block(self, rows, other: "PointSet | None" = None) -> np.ndarray:
        """Integer matrix of ``denom**2 * <x_r, y>`` for the given rows."""
        other = other if other is not None else self
        if other.denom != self.denom:
            raise ValueError("point sets use different denominators")
        a = self.numer[rows]
        g = _exact_dot(a, other.numer)
        if self.irr is not None or other.irr is not None:
            ai = self.irr[rows] if self.irr is not None else np.zeros_like(a)
            bi = other.irr if other.irr is not None else np.zeros_like(other.numer)
            cross = _exact_dot(a, bi) + _exact_dot(ai, other.numer)
            if cross.any():
                raise ArithmeticError("irrational inner product; point data is corrupt")
            g = g + 3 * _exact_dot(ai, bi)
        return g

    def inner(self, i: int, j: int) -> Fraction:
        """Normalized inner product <x_i, x_j> / norm2."""
        return Fraction(int(self.gram_block([i])[0, j]), self.scaled_norm2)

    def validate(self) -> None:
        """Check the antipodal invariants; raises ValueError on failure."""
        if len({self._key(i) for i in range(len(self))}) != len(self):
            raise ValueError("duplicate points")
        if self.pairs is None:
            return
        flat = np.sort(self.pairs.ravel())
        if not np.array_equal(flat, np.arange(len(self))):
            raise ValueError("pairing is not a perfect matching")
        i, j = self.pairs[:, 0], self.pairs[:, 1]
        if not np.array_equal(self.numer[i], -self.numer[j]):
            raise ValueError("paired points are not antipodal")
        if self.irr is not None and not np.array_equal(self.irr[i], -self.irr[j]):
            raise ValueError("paired points are not antipodal")

    def __repr__(self):
        return f"PointSet({self.name or '?'}: {len(self)} points in R^{self.dim}, norm2={self.norm2})"


def _exact_dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    bound = int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0)) * a.shape[1]
    if bound < 2**24:
        return (a.astype(np.float32) @ b.astype(np.float32).T).astype(np.int64)
    if bound < 2**52:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64).T).astype(np.int64)
    return a.astype(object) @ b.astype(object).T


@dataclass
class HalfSelection:
    """One representative per antipodal pair: ``signs[p] = +1`` picks
    ``pairs[p][0]``, ``-1`` picks ``pairs[p][1]``."""

    base: PointSet
    signs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.base.pairs is None:
            raise ValueError("base point set has no antipodal pairing")
        self.signs = np.asarray(self.signs, dtype=np.int8)
        if self.signs.shape != (self.base.npairs,):
            raise ValueError(f"expected {self.base.npairs} signs, got {self.signs.shape}")
        if not np.all(np.abs(self.signs) == 1):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def from_indices(cls, base: PointSet, indices) -> "HalfSelection":
        indices = np.asarray(indices, dtype=np.int64)
        pos = np.full(len(base), -2, dtype=np.int64)
        pos[base.pairs[:, 0]] = np.arange(base.npairs)
        pos[base.pairs[:, 1]] = -np.arange(base.npairs) - 1
        signs = np.zeros(base.npairs, dtype=np.int8)
        for i in indices:
            p = pos[i]
            k, s = (p, 1) if p >= 0 else (-p - 1, -1)
            if signs[k]:
                raise ValueError(f"pair {k} selected twice")
            signs[k] = s
        if not np.all(signs):
            raise ValueError("selection misses some antipodal pairs")
        return cls(base, signs)

    @property
    def indices(self) -> np.ndarray:
        return np.where(self.signs > 0, self.base.pairs[:, 0], self.base.pairs[:, 1])

    def __len__(self) -> int:
        return len(self.signs)

    @property
    def points(self) -> PointSet:
        return self.base.subset(self.indices, name=f"half of {self.base.name}")

    def flipped(self, pair: int) -> "HalfSelection":
        s = self.signs.copy()
        s[pair] = -s[pair]
        return HalfSelection(self.base, s)


def as_pointset(x: PointSet | HalfSelection) -> PointSet:
    return x.points if isinstance(x, HalfSelection) else x
