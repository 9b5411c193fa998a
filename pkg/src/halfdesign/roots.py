"""Root systems A_l, D_n, E_6, E_7, E_8 and zero-sum halves of them.

Every generated set lists a positive system first and its negatives after it,
so ``pairs[p] = (p, p + npairs)`` and the all-plus selection is the positive
system itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np

from .exact import fraction_gcd
from .points import HalfSelection, PointSet


@dataclass(frozen=True)
class RootFamily:
    family: Literal["A", "D", "E"]
    parameter: int

    def __post_init__(self):
        f, n = self.family, self.parameter
        if f not in ("A", "D", "E"):
            raise ValueError(f"unknown root family {f!r}")
        if f == "A" and n < 1:
            raise ValueError("A_l needs l >= 1")
        if f == "D" and n < 3:
            raise ValueError("D_n needs n >= 3")
        if f == "E" and n not in (6, 7, 8):
            raise ValueError("E_m needs m in {6, 7, 8}")

    @classmethod
    def parse(cls, text: str) -> "RootFamily":
        text = text.replace("_", "").replace(" ", "")
        return cls(text[0].upper(), int(text[1:]))

    def __str__(self):
        return f"{self.family}{self.parameter}"


@dataclass(frozen=True)
class ObstructionCertificate:
    """No half sums to zero because a linear functional disagrees mod a lattice.

    For every half S = sum_p s_p x_p one has
    ``<w, S> = sum_p <w, x_p>  (mod modulus)`` with ``modulus`` generating
    the Z-span of the ``2<w, x_p>``; ``residue != 0`` rules out S = 0.
    ``odd_terms`` counts the pairs contributing an odd multiple of
    ``modulus / 2`` and is odd whenever the certificate is valid.
    """

    kind: Literal["half-integer-coordinate", "lattice-parity"]
    functional: tuple[int, ...]
    modulus: Fraction
    residue: Fraction
    odd_terms: int
    rho_value: Fraction
    note: str = field(default="", compare=False)


def _embed(dim: int, entries: dict[int, int]) -> list[int]:
    v = [0] * dim
    for k, x in entries.items():
        v[k] = x
    return v


def _a_positive(l: int) -> list[list[int]]:
    n = l + 1
    return [_embed(n, {i: 1, j: -1}) for i in range(n) for j in range(i + 1, n)]


def _d_positive(n: int, dim: int | None = None, scale: int = 1) -> list[list[int]]:
    dim = dim or n
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(_embed(dim, {i: scale, j: scale}))
            out.append(_embed(dim, {i: scale, j: -scale}))
    return out


def _half_spin(k: int, parity: int) -> list[tuple[int, ...]]:
    """Sign vectors c in {+-1}^k with c_0 = +1 and prod(c) = parity."""
    return [c for c in itertools.product((1, -1), repeat=k) if c[0] == 1 and int(np.prod(c)) == parity]


def _pointset(pos_numer, denom=1, pos_irr=None, name="") -> PointSet:
    pos = np.asarray(pos_numer, dtype=np.int64)
    numer = np.vstack([pos, -pos])
    irr = None
    if pos_irr is not None:
        pi = np.asarray(pos_irr, dtype=np.int64)
        irr = np.vstack([pi, -pi])
    m = len(pos)
    pairs = np.stack([np.arange(m), np.arange(m) + m], axis=1)
    return PointSet(numer, denom, irr, pairs=pairs, name=name)


def generate_roots(f: RootFamily | str) -> PointSet:
    if isinstance(f, str):
        f = RootFamily.parse(f)
    fam, n = f.family, f.parameter
    if fam == "A":
        return _pointset(_a_positive(n), name=str(f))
    if fam == "D":
        return _pointset(_d_positive(n), name=str(f))
    if n == 8:
        pos = [[2 * x for x in v] for v in _d_positive(8)]
        pos += [list(c) for c in _half_spin(8, 1)]
        return _pointset(pos, denom=2, name="E8")
    if n == 7:
        pos = [_embed(8, {i: 2, j: -2}) for i in range(8) for j in range(i + 1, 8)]
        pos += [list(c) for c in itertools.product((1, -1), repeat=8) if c[0] == 1 and sum(c) == 0]
        return _pointset(pos, denom=2, name="E7")
    # E_6: D_5 on the first five axes plus (c_1..c_5)/2 + (sqrt3/2) c_6 e_6
    pos = [[2 * x for x in v] for v in _d_positive(5, dim=6)]
    irr = [[0] * 6 for _ in pos]
    for c in _half_spin(6, -1):
        pos.append(list(c[:5]) + [0])
        irr.append([0] * 5 + [c[5]])
    return _pointset(pos, denom=2, pos_irr=irr, name="E6")


# explicit zero-sum sign rules ---------------------------------------------------------


def _a_signs(l: int) -> list[int]:
    n = l + 1
    # (-1)^(i+j) with 1-based i, j
    return [(-1) ** ((i + 1) + (j + 1)) for i in range(n) for j in range(i + 1, n)]


def _d4k_sign(i: int, j: int) -> tuple[int, int]:
    """Signs for (e_i + e_j, e_i - e_j), 1-based i < j <= 4k."""
    return (-1) ** ((i + j) // 2), (-1) ** (i + j)


def _d_signs(n: int) -> list[int]:
    signs = []
    last = n if n % 4 == 0 else n - 1
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if j <= last:
                signs.extend(_d4k_sign(i, j))
            else:
                # n = 4k+1: (-1)^i [(e_i + e_n) - (e_i - e_n)]
                signs.extend(((-1) ** i, -((-1) ** i)))
    return signs


def _spin_signs(k: int, parity: int) -> list[int]:
    # keep the representative when c_1 c_2 c_3 = +1, else take its negative
    return [1 if c[0] * c[1] * c[2] == 1 else -1 for c in _half_spin(k, parity)]


def _functional_certificate(X: PointSet, w, kind, note) -> ObstructionCertificate:
    vals = _functional_values(X, w)
    modulus = fraction_gcd(2 * v for v in vals)
    total = sum(vals, Fraction(0))
    residue = total % modulus if modulus else total
    odd = sum(1 for v in vals if modulus and (2 * v / modulus).numerator % 2 == 1)
    return ObstructionCertificate(kind, tuple(w), modulus, residue, odd, total / 2, note)


def _functional_values(X: PointSet, w) -> list[Fraction]:
    w = np.asarray(w, dtype=np.int64)
    reps = X.pairs[:, 0]
    if X.irr is not None and (X.irr[reps] @ w).any():
        raise ValueError("functional must be rational on the point set")
    return [Fraction(int(v), X.denom) for v in X.numer[reps] @ w]


def verify_certificate(X: PointSet, cert: ObstructionCertificate) -> bool:
    """Re-derive the certificate's arithmetic from the point set alone."""
    fresh = _functional_certificate(X, cert.functional, cert.kind, cert.note)
    return (
        fresh == cert
        and cert.modulus > 0
        and cert.residue != 0
        and cert.odd_terms % 2 == 1
    )


def construct_half(f: RootFamily | str) -> HalfSelection | ObstructionCertificate:
    if isinstance(f, str):
        f = RootFamily.parse(f)
    X = generate_roots(f)
    fam, n = f.family, f.parameter
    e1 = [1] + [0] * (X.dim - 1)
    if fam == "A":
        if n % 2:
            return _functional_certificate(
                X, e1, "half-integer-coordinate",
                f"e_1-coefficient of rho is {n}/2, not an integer; {n} pairs contribute +-1 to e_1",
            )
        return HalfSelection(X, _a_signs(n))
    if fam == "D":
        if n % 4 in (2, 3):
            return _functional_certificate(
                X, [1] * n, "lattice-parity",
                f"n(n-1)/2 = {n * (n - 1) // 2} is odd, so rho is not in the root lattice",
            )
        return HalfSelection(X, _d_signs(n))
    if n == 7:
        return _functional_certificate(
            X, e1, "half-integer-coordinate",
            "35 pairs contribute +-1/2 to the e_1 total, which cannot vanish",
        )
    if n == 8:
        return HalfSelection(X, _d_signs(8) + _spin_signs(8, 1))
    return HalfSelection(X, _d_signs(5) + _spin_signs(6, -1))


def selection_sum(sel: HalfSelection) -> np.ndarray:
    """Integer sum of the selected rows (with the sqrt3 part appended)."""
    X = sel.base
    rows = sel.indices
    s = X.numer[rows].sum(axis=0)
    if X.irr is not None:
        s = np.concatenate([s, X.irr[rows].sum(axis=0)])
    return s


class SearchTooLarge(ValueError):
    pass


def brute_force_half_search(
    X: PointSet, limit: int = 30, *, meet_in_middle: bool = False
) -> HalfSelection | None:
    """Exhaustive search over the 2^(pairs-1) halves with the first sign fixed.

    Returns the lexicographically smallest zero-sum sign vector (+1 before -1)
    or None when no half sums to zero.
    """
    P = X.npairs
    if P > limit:
        raise SearchTooLarge(f"{P} pairs exceeds the limit of {limit}")
    reps = X.pairs[:, 0]
    vec = X.numer[reps]
    if X.irr is not None:
        vec = np.hstack([vec, X.irr[reps]])
    base = vec.sum(axis=0)
    # choosing -1 on pair p subtracts 2 x_p from the all-plus sum
    free = vec[1:] * 2
    F = len(free)
    n_low = min(F, 16)
    n_high = F - n_low
    low = free[n_high:]
    low_sums = _subset_sums(low)
    high = free[:n_high]
    if meet_in_middle:
        table: dict[bytes, int] = {}
        for idx in range(len(low_sums) - 1, -1, -1):
            table[low_sums[idx].tobytes()] = idx
    for hi in range(1 << n_high):
        hbits = _bits(hi, n_high)
        target = base - (hbits @ high if n_high else 0)
        if meet_in_middle:
            lo = table.get(np.ascontiguousarray(target).tobytes())
            if lo is None:
                continue
        else:
            hits = np.flatnonzero(~(low_sums - target).any(axis=1))
            if not len(hits):
                continue
            lo = int(hits[0])
        bits = np.concatenate([hbits, _bits(lo, n_low)])
        return HalfSelection(X, np.concatenate([[1], 1 - 2 * bits]).astype(np.int8))
    return None


def _bits(value: int, width: int) -> np.ndarray:
    """Big-endian bit vector of ``value``."""
    return np.array([(value >> (width - 1 - k)) & 1 for k in range(width)], dtype=np.int64)


def _subset_sums(rows: np.ndarray) -> np.ndarray:
    """All 2^k subset sums, indexed so that bit (k-1-t) of the index selects row t."""
    sums = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for row in rows:
        sums = _append_bit(sums, row)
    return sums


def _append_bit(sums: np.ndarray, row: np.ndarray) -> np.ndarray:
    # new index = 2*old + bit keeps earlier rows as the more significant bits
    out = np.empty((2 * len(sums), sums.shape[1]), dtype=np.int64)
    out[0::2] = sums
    out[1::2] = sums + row
    return out
