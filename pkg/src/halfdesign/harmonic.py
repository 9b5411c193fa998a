"""Homogeneous harmonic polynomials, Gegenbauer polynomials and
characteristic matrices.

Monomials of a fixed degree are ordered graded-lexicographically, i.e.
``x_1^i`` first, matching ``itertools.combinations_with_replacement``.
Harmonic bases are integer kernels of the Laplacian; they are not
orthonormal, which is harmless because everything downstream depends only on
the column span of the characteristic matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, lcm
from typing import Sequence

import numpy as np

from .exact import ExactMatrix, as_fraction, int_matmul
from .linalg import kernel_basis
from .points import HalfSelection, PointSet, as_pointset

Exponent = tuple[int, ...]


def gegenbauer(n: int, i: int, t) -> Fraction:
    """C_i^(lambda)(t) with lambda = (n-2)/2, by the three-term recurrence.

    For n = 2 (lambda = 0) the Chebyshev polynomial T_i is returned, the
    usual normalised limit of C_i^(lambda) / lambda.
    """
    if n < 2 or i < 0:
        raise ValueError("need n >= 2 and i >= 0")
    t = as_fraction(t)
    lam = Fraction(n - 2, 2)
    if i == 0:
        return Fraction(1)
    if lam == 0:
        prev, cur = Fraction(1), t
        for _ in range(2, i + 1):
            prev, cur = cur, 2 * t * cur - prev
        return cur
    prev, cur = Fraction(1), 2 * lam * t
    for k in range(2, i + 1):
        prev, cur = cur, (2 * (k + lam - 1) * t * cur - (k + 2 * lam - 2) * prev) / k
    return cur


def harm_dim(n: int, i: int) -> int:
    if n < 1 or i < 0:
        raise ValueError("need n >= 1 and i >= 0")
    return comb(n + i - 1, i) - (comb(n + i - 3, i - 2) if i >= 2 else 0)


@lru_cache(maxsize=64)
def monomials(n: int, i: int) -> tuple[Exponent, ...]:
    out = []
    for combo in itertools.combinations_with_replacement(range(n), i):
        e = [0] * n
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    return tuple(out)


@dataclass(frozen=True)
class Polynomial:
    dim: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            c = as_fraction(c)
            if len(e) != self.dim:
                raise ValueError("exponent length differs from dim")
            if c:
                clean[tuple(e)] = c
        if len({sum(e) for e in clean}) > 1:
            raise ValueError("polynomial is not homogeneous")
        object.__setattr__(self, "terms", clean)

    @property
    def degree(self) -> int | None:
        return sum(next(iter(self.terms))) if self.terms else None

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= x**k
            total += term
        return total

    def __add__(self, other: "Polynomial") -> "Polynomial":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.dim, terms)

    def scale(self, c) -> "Polynomial":
        return Polynomial(self.dim, {e: v * c for e, v in self.terms.items()})

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"x{k + 1}" + (f"^{p}" if p > 1 else "") for k, p in enumerate(e) if p)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def laplacian(p: Polynomial, weights: Sequence | None = None) -> Polynomial:
    """sum_j w_j^{-1} d^2 p / dx_j^2 for a diagonal metric (all ones by default)."""
    inv = [Fraction(1)] * p.dim if weights is None else [1 / as_fraction(w) for w in weights]
    out: dict[Exponent, Fraction] = {}
    for e, c in p.terms.items():
        for j, k in enumerate(e):
            if k >= 2:
                f = list(e)
                f[j] -= 2
                f = tuple(f)
                out[f] = out.get(f, 0) + c * k * (k - 1) * inv[j]
    return Polynomial(p.dim, out)


@dataclass(frozen=True)
class HarmonicBasis:
    dim: int
    degree: int
    basis: tuple[Polynomial, ...]
    weights: tuple[Fraction, ...] | None = None

    def __len__(self):
        return len(self.basis)

    def coefficient_matrix(self) -> ExactMatrix:
        """Rows = basis elements in monomial coordinates (integer entries)."""
        index = {e: k for k, e in enumerate(monomials(self.dim, self.degree))}
        grid = np.zeros((len(self.basis), len(index)), dtype=object)
        for r, p in enumerate(self.basis):
            for e, c in p.terms.items():
                grid[r, index[e]] = int(c)
        return ExactMatrix(grid)


def laplacian_matrix(n: int, i: int, weights: Sequence | None = None) -> ExactMatrix:
    """Matrix of the Laplacian from degree-i to degree-(i-2) monomial coordinates."""
    src = monomials(n, i)
    dst = {e: k for k, e in enumerate(monomials(n, i - 2))}
    inv = [Fraction(1)] * n if weights is None else [1 / as_fraction(w) for w in weights]
    den = 1
    for w in inv:
        den = lcm(den, w.denominator)
    grid = np.zeros((len(dst), len(src)), dtype=np.int64)
    for col, e in enumerate(src):
        for j, k in enumerate(e):
            if k >= 2:
                f = list(e)
                f[j] -= 2
                grid[dst[tuple(f)], col] += int(k * (k - 1) * inv[j] * den)
    return ExactMatrix(grid, den)


@lru_cache(maxsize=32)
def harmonic_basis(n: int, i: int, weights: tuple | None = None) -> HarmonicBasis:
    """Integer basis of the degree-i harmonics (kernel of the Laplacian)."""
    if n < 1 or i < 0:
        raise ValueError("need n >= 1 and i >= 0")
    mons = monomials(n, i)
    if weights is not None:
        weights = tuple(as_fraction(w) for w in weights)
        if len(weights) != n:
            raise ValueError("one metric weight per variable")
    if i < 2:
        basis = tuple(Polynomial(n, {e: 1}) for e in mons)
        return HarmonicBasis(n, i, basis, weights)
    ker = kernel_basis(laplacian_matrix(n, i, weights), "right")
    polys = []
    for row in ker.numer:
        ints = [int(x) for x in row]
        g = 0
        for x in ints:
            g = gcd(g, x)
        polys.append(Polynomial(n, {e: x // g for e, x in zip(mons, ints) if x}))
    if len(polys) != harm_dim(n, i):
        raise ArithmeticError("Laplacian kernel has the wrong dimension")
    return HarmonicBasis(n, i, tuple(polys), weights)


def basis_for(X: PointSet, i: int) -> HarmonicBasis:
    w = X.chart.weights if X.chart else None
    return harmonic_basis(X.sphere_dim, i, w)


def monomial_values(X: PointSet, i: int, rows=None) -> tuple[np.ndarray, np.ndarray | None]:
    """Integer arrays (rational, sqrt3 parts) of denom**i * x^e over the monomials."""
    y, yi = X.intrinsic()
    if rows is not None:
        y = y[rows]
        yi = None if yi is None else yi[rows]
    mons = monomials(X.sphere_dim, i)
    big = int(np.abs(y).max(initial=0)) + (2 * int(np.abs(yi).max(initial=0)) if yi is not None else 0)
    dtype = np.int64 if big**i < 2**62 // 4 else object
    a = np.empty((len(y), len(mons)), dtype=dtype)
    b = None if yi is None else np.empty_like(a)
    for col, combo in enumerate(itertools.combinations_with_replacement(range(X.sphere_dim), i)):
        ra = np.ones(len(y), dtype=dtype)
        rb = np.zeros(len(y), dtype=dtype)
        for k in combo:
            ka = y[:, k].astype(dtype)
            if yi is None:
                ra = ra * ka
            else:
                kb = yi[:, k].astype(dtype)
                ra, rb = ra * ka + 3 * rb * kb, ra * kb + rb * ka
        a[:, col] = ra
        if b is not None:
            b[:, col] = rb
    return a, b


@dataclass
class CharacteristicMatrix:
    """Values of a harmonic basis at the points: entry (x, a) = phi_a(x).

    ``irr`` holds the sqrt3 part for point sets with quadratic coordinates.
    """

    degree: int
    matrix: ExactMatrix
    irr: ExactMatrix | None = None
    row_points: np.ndarray | None = None

    @property
    def shape(self):
        return self.matrix.shape

    def rational_stack(self) -> ExactMatrix:
        """[A | B] for A + sqrt3 B: a rational vector kills both parts at once."""
        if self.irr is None:
            return self.matrix
        den = lcm(self.matrix.denom, self.irr.denom)
        a = self.matrix.numer.astype(object) * (den // self.matrix.denom)
        b = self.irr.numer.astype(object) * (den // self.irr.denom)
        return ExactMatrix(np.hstack([a, b]), den)


def characteristic_matrix(sel: HalfSelection | PointSet, i: int, rows=None) -> CharacteristicMatrix:
    X = as_pointset(sel)
    if X.sphere_dim < 1:
        raise ValueError("empty dimension")
    hb = basis_for(X, i)
    coeff = hb.coefficient_matrix().numer
    a, b = monomial_values(X, i, rows)
    den = X.denom**i
    mat = ExactMatrix(int_matmul(a, coeff.T), den)
    irr = None if b is None else ExactMatrix(int_matmul(b, coeff.T), den)
    idx = sel.indices if isinstance(sel, HalfSelection) else np.arange(len(X))
    if rows is not None:
        idx = idx[rows]
    return CharacteristicMatrix(i, mat, irr, idx)
