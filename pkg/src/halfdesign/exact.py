"""Exact scalars, vectors and matrices over Q and Q(sqrt 3).

Rationals are plain :class:`fractions.Fraction`.  Matrices keep an integer
numerator grid plus one positive common denominator, so large characteristic
matrices stay compact (int64 when the entries allow it, Python ints otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

import numpy as np

Rational = Fraction
Number = Union[int, Fraction, "QuadraticScalar"]

_INT64_SAFE = 2**62


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, QuadraticScalar):
        if x.b:
            raise ValueError(f"{x} is not rational")
        return x.a
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fraction_gcd(values: Iterable[Fraction]) -> Fraction:
    """Generator of the Z-module spanned by the given rationals (0 if all zero)."""
    g = Fraction(0)
    for v in values:
        v = as_fraction(v)
        if v == 0:
            continue
        if g == 0:
            g = abs(v)
            continue
        den = lcm(g.denominator, v.denominator)
        g = Fraction(gcd(g.numerator * (den // g.denominator), v.numerator * (den // v.denominator)), den)
    return g


@dataclass(frozen=True)
class QuadraticScalar:
    """The number ``a + b*sqrt(3)`` with rational ``a`` and ``b``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))

    @classmethod
    def coerce(cls, x) -> "QuadraticScalar":
        if isinstance(x, QuadraticScalar):
            return x
        return cls(as_fraction(x))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __add__(self, other):
        o = QuadraticScalar.coerce(other)
        return QuadraticScalar(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticScalar(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-QuadraticScalar.coerce(other))

    def __rsub__(self, other):
        return QuadraticScalar.coerce(other) - self

    def __mul__(self, other):
        o = QuadraticScalar.coerce(other)
        return QuadraticScalar(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            o = QuadraticScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b)) if self.b else hash(self.a)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __str__(self):
        return format_quadratic(self)


def format_quadratic(x: QuadraticScalar) -> str:
    sign = "-" if x.b < 0 else "+"
    return f"{format_fraction(x.a)}{sign}{format_fraction(abs(x.b))}~3"


def parse_scalar(token: str) -> QuadraticScalar:
    """Parse ``p/q`` or ``p/q+r/s~3`` (also ``...-r/s~3``)."""
    token = token.strip()
    if not token.endswith("~3"):
        return QuadraticScalar(Fraction(token))
    body = token[:-2]
    # the split point is the last sign that is not a leading sign or exponent
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "/+-":
            return QuadraticScalar(Fraction(body[:k]), Fraction(body[k:]))
    raise ValueError(f"malformed quadratic token {token!r}")


@dataclass(frozen=True)
class ExactVector:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(QuadraticScalar.coerce(c) for c in self.coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __add__(self, other: "ExactVector") -> "ExactVector":
        _check_dims(self, other)
        return ExactVector(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "ExactVector") -> "ExactVector":
        _check_dims(self, other)
        return ExactVector(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "ExactVector":
        return ExactVector(tuple(-x for x in self.coords))

    def scale(self, c) -> "ExactVector":
        return ExactVector(tuple(x * c for x in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    @classmethod
    def zero(cls, dim: int) -> "ExactVector":
        return cls((0,) * dim)

    @classmethod
    def basis(cls, dim: int, i: int) -> "ExactVector":
        return cls(tuple(1 if j == i else 0 for j in range(dim)))

    def __str__(self):
        return "(" + ", ".join(
            format_fraction(c.a) if c.is_rational else format_quadratic(c) for c in self.coords
        ) + ")"


def _check_dims(v: ExactVector, w: ExactVector) -> None:
    if v.dim != w.dim:
        raise ValueError(f"dimension mismatch: {v.dim} vs {w.dim}")


def inner_product(v: ExactVector, w: ExactVector) -> QuadraticScalar:
    _check_dims(v, w)
    return sum((x * y for x, y in zip(v.coords, w.coords)), QuadraticScalar())


def _fits_int64(arr: np.ndarray) -> bool:
    if arr.size == 0:
        return True
    return max(abs(int(arr.max())), abs(int(arr.min()))) < _INT64_SAFE


class ExactMatrix:
    """Rational matrix stored as ``numer / denom`` with an integer grid.

    ``numer`` is int64 when every entry fits comfortably, otherwise an object
    array of Python ints.  Instances are treated as immutable.
    """

    __slots__ = ("numer", "denom")

    def __init__(self, numer, denom: int = 1):
        arr = np.asarray(numer)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("matrix numerator must be two-dimensional")
        if arr.dtype != object and not np.issubdtype(arr.dtype, np.integer):
            raise TypeError("matrix numerator must be integer-valued")
        denom = int(denom)
        if denom <= 0:
            raise ValueError("denominator must be positive")
        if arr.dtype == object:
            g = reduce(gcd, (int(x) for x in arr.flat), denom)
        else:
            g = gcd(int(np.gcd.reduce(arr, axis=None)) if arr.size else 0, denom)
        if g > 1:
            arr = arr // g
            denom //= g
        if arr.dtype == object and _fits_int64(arr):
            arr = arr.astype(np.int64)
        elif arr.dtype != object and arr.dtype != np.int64:
            arr = arr.astype(np.int64)
        arr.setflags(write=False)
        self.numer = arr
        self.denom = denom

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = [[as_fraction(x) for x in r] for r in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        den = 1
        for r in rows:
            for x in r:
                den = lcm(den, x.denominator)
        grid = np.empty((len(rows), ncols), dtype=object)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                grid[i, j] = x.numerator * (den // x.denominator)
        return cls(grid, den)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return self.numer.shape

    @property
    def rows(self) -> int:
        return self.numer.shape[0]

    @property
    def cols(self) -> int:
        return self.numer.shape[1]

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.numer[i, j]), self.denom)

    def to_rows(self) -> list[list[Fraction]]:
        d = self.denom
        return [[Fraction(int(x), d) for x in row] for row in self.numer]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.numer.T.copy(), self.denom)

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return not self.numer.any()

    def is_integral(self) -> bool:
        return self.denom == 1

    def select_rows(self, idx) -> "ExactMatrix":
        return ExactMatrix(self.numer[np.asarray(idx, dtype=np.int64)], self.denom)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return ExactMatrix(int_matmul(self.numer, other.numer), self.denom * other.denom)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.denom == other.denom and bool(
            np.all(self.numer == other.numer)
        )

    def __hash__(self):
        return hash((self.shape, self.denom, self.numer.tobytes() if self.numer.dtype != object else str(self.numer.tolist())))

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, denom={self.denom})"


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return max(abs(int(a.max())), abs(int(a.min())))


def int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer matrix product; int64 when the result provably fits."""
    inner = a.shape[1]
    if a.dtype != object and b.dtype != object:
        bound = _maxabs(a) * _maxabs(b) * max(inner, 1)
        if bound < _INT64_SAFE:
            if bound < 2**52:
                # BLAS is exact below 2**53 and an order of magnitude faster
                return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
            return a @ b
    return np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)
