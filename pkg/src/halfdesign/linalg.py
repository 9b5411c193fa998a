"""Exact row reduction, rank and null spaces.

Two routes share one canonical output:

* ``fraction``: textbook Gauss-Jordan over :class:`~fractions.Fraction`.
* ``modular``: reduced row-echelon form modulo word-size primes (FLINT),
  rational reconstruction of the kernel, then an exact integer check
  ``N @ v == 0``.  A rank found modulo p is a lower bound over Q, and the
  verified kernel bounds it from above, so the modular answer is certified.

Kernel bases are always returned in the same normal form (identity on the
free columns of the RREF), so both routes can be compared entry for entry.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import isqrt, lcm
from typing import Literal, Sequence

import flint
import numpy as np

from .exact import ExactMatrix, as_fraction, int_matmul

log = logging.getLogger(__name__)

PRIMES = (
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
    4611686018427387709,
)

# above this many entries the modular route is used unless forced
MODULAR_THRESHOLD = 2500

Method = Literal["auto", "fraction", "modular"]


def _use_modular(m: ExactMatrix, method: Method) -> bool:
    if method == "auto":
        return m.rows * m.cols > MODULAR_THRESHOLD
    return method == "modular"


def rref_fraction(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], int, list[int]]:
    """Gauss-Jordan elimination; pivot = first nonzero entry scanning columns
    left to right and rows top to bottom."""
    a = [[as_fraction(x) for x in r] for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        row = a[r] = [x * inv for x in a[r]]
        nz = [j for j in range(c, ncols) if row[j] != 0]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f != 0:
                    ai = a[i]
                    for j in nz:
                        ai[j] -= f * row[j]
        pivots.append(c)
        r += 1
    return a, r, pivots


def _nmod(m: np.ndarray, p: int) -> flint.nmod_mat:
    rows, cols = m.shape
    return flint.nmod_mat(rows, cols, [int(x) % p for x in m.flat], p)


def _rref_mod(m: np.ndarray, p: int) -> tuple[list[list[int]], int, list[int]]:
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return [], 0, []
    red, rank = _nmod(m, p).rref()
    table = [[int(x) for x in row] for row in red.tolist()[:rank]]
    pivots = [next(j for j, x in enumerate(row) if x) for row in table]
    return table, rank, pivots


def rank_mod(m: ExactMatrix, p: int = PRIMES[0]) -> int:
    """Rank modulo p: always a lower bound for the rank over Q."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _nmod(m.numer, p).rank()


def rational_reconstruct(a: int, mod: int) -> Fraction | None:
    """Smallest n/d with n = a*d (mod ``mod``) and |n|, d <= sqrt(mod/2)."""
    a %= mod
    bound = isqrt(mod // 2)
    r0, r1 = mod, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def rref(m: ExactMatrix) -> tuple[ExactMatrix, int, list[int]]:
    """Exact reduced row-echelon form, rank and pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return m, 0, []
    red, rank, pivots = rref_fraction(m.to_rows())
    return ExactMatrix.from_rows(red), rank, pivots


def rank(m: ExactMatrix, method: Method = "auto") -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if not _use_modular(m, method):
        return rref_fraction(m.to_rows())[1]
    r = rank_mod(m)
    if r == min(m.shape):
        return r
    # rank deficient mod p: the certified kernel pins the rational rank
    side = "right" if m.cols <= m.rows else "left"
    k = kernel_basis(m, side, method="modular").rows
    return (m.cols if side == "right" else m.rows) - k


def _assemble_kernel(coeffs, pivots: list[int], ncols: int) -> ExactMatrix:
    """Rows v_f with v_f[f] = 1 and v_f[pivot_t] = -coeffs[t][f_index]."""
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    if not free:
        return ExactMatrix.zeros(0, ncols)
    den = 1
    for row in coeffs:
        for x in row:
            if x:
                den = lcm(den, x.denominator)
    grid = np.zeros((len(free), ncols), dtype=object)
    for fi, f in enumerate(free):
        grid[fi, f] = den
    for t, pc in enumerate(pivots):
        row = coeffs[t]
        for fi in range(len(free)):
            x = row[fi]
            if x:
                grid[fi, pc] = -x.numerator * (den // x.denominator)
    return ExactMatrix(grid, den)


def _right_kernel_fraction(m: ExactMatrix) -> ExactMatrix:
    if m.rows == 0:
        return ExactMatrix.identity(m.cols)
    red, r, piv = rref_fraction(m.to_rows())
    pivset = set(piv)
    free = [j for j in range(m.cols) if j not in pivset]
    coeffs = [[red[t][f] for f in free] for t in range(r)]
    return _assemble_kernel(coeffs, piv, m.cols)


def _right_kernel_modular(m: ExactMatrix, max_primes: int = len(PRIMES)) -> ExactMatrix:
    numer = m.numer
    ncols = m.cols
    if m.rows == 0:
        return _right_kernel_fraction(m)
    best = None  # (rank, pivots, accumulated residues, modulus)
    for p in PRIMES[:max_primes]:
        table, r, piv = _rref_mod(numer, p)
        pivset = set(piv)
        free = [j for j in range(ncols) if j not in pivset]
        residues = np.array([[row[f] for f in free] for row in table], dtype=object).reshape(r, len(free))
        if best is None or r > best[0]:
            best = (r, piv, residues, p)
        elif r < best[0] or piv != best[1]:
            continue  # unlucky prime
        else:
            r0, piv0, res0, mod0 = best
            inv = pow(mod0, -1, p)
            t = ((residues - res0) % p * inv) % p
            best = (r0, piv0, res0 + mod0 * t, mod0 * p)
        r, piv, res, mod = best
        if r == ncols:
            return ExactMatrix.zeros(0, ncols)
        coeffs = []
        for row in res:
            out = []
            for val in row:
                val = int(val)
                q = Fraction(0) if val == 0 else rational_reconstruct(val, mod)
                if q is None:
                    break
                out.append(q)
            else:
                coeffs.append(out)
                continue
            break
        else:
            ker = _assemble_kernel(coeffs, piv, ncols)
            if not int_matmul(numer, ker.numer.T).any():
                return ker
            log.debug("kernel reconstruction failed verification at %d primes", PRIMES.index(p) + 1)
    raise ArithmeticError("modular kernel did not verify; matrix entries too large for the prime budget")


def kernel_basis(m: ExactMatrix, side: Literal["left", "right"] = "right", method: Method = "auto") -> ExactMatrix:
    """Basis of ``{v : M v = 0}`` (right) or ``{v : v M = 0}`` (left), one
    vector per row, in RREF-derived normal form."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    target = m.transpose() if side == "left" else m
    n = target.cols
    if n == 0:
        return ExactMatrix.zeros(0, 0)
    if target.rows == 0 or target.is_zero():
        return ExactMatrix.identity(n)
    return _right_kernel_modular(target) if _use_modular(target, method) else _right_kernel_fraction(target)
