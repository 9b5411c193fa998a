"""Harmonic-index-T design tests, sign searches in left kernels, local search."""

from __future__ import annotations

import hashlib
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal

import numpy as np

from .exact import ExactMatrix, ExactVector, QuadraticScalar, int_matmul
from .harmonic import CharacteristicMatrix, gegenbauer
from .linalg import kernel_basis, rank, rank_mod, rref_fraction
from .points import HalfSelection, PointSet, as_pointset

log = logging.getLogger(__name__)

DEFAULT_KMAX = 26
DEFAULT_SEED = 1


# inner-product distributions ---------------------------------------------------------

_DIST_CACHE: dict[str, dict[int, int]] = {}


def _fingerprint(X: PointSet) -> str:
    h = hashlib.sha256(X.numer.tobytes())
    h.update(str(X.numer.shape).encode())
    if X.irr is not None:
        h.update(X.irr.tobytes())
    return h.hexdigest()


def gram_histogram(X: PointSet | HalfSelection, threads: int = 1) -> dict[int, int]:
    """Counts of the integer inner products ``denom**2 <x, y>`` over all
    ordered pairs, diagonal included.  Normalise by ``scaled_norm2``."""
    X = as_pointset(X) if isinstance(X, HalfSelection) else X
    key = _fingerprint(X)
    if key in _DIST_CACHE:
        return dict(_DIST_CACHE[key])
    n2 = X.scaled_norm2
    n = len(X)
    # x and -x have mirrored rows, so a full pairing halves the work
    mirrored = X.pairs is not None and X.npairs * 2 == n
    rows = X.pairs[:, 0] if mirrored else np.arange(n)
    step = max(1, (1 << 25) // max(n, 1))
    blocks = [rows[s:s + step] for s in range(0, len(rows), step)]

    def work(block):
        g = X.gram_block(block)
        return np.bincount((g + n2).ravel(), minlength=2 * n2 + 1)

    total = np.zeros(2 * n2 + 1, dtype=np.int64)
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            for c in ex.map(work, blocks):
                total += c
    else:
        for b in blocks:
            total += work(b)
    if mirrored:
        total = total + total[::-1]
    hist = {int(v) - n2: int(c) for v, c in enumerate(total) if c}
    _DIST_CACHE[key] = hist
    return dict(hist)


def normalized_distribution(X: PointSet | HalfSelection, threads: int = 1) -> dict[Fraction, int]:
    P = as_pointset(X)
    n2 = P.scaled_norm2
    return {Fraction(v, n2): c for v, c in gram_histogram(P, threads).items()}


# moments -------------------------------------------------------------------------------


def gegenbauer_moment(X: PointSet | HalfSelection, i: int, threads: int = 1) -> Fraction:
    """sum over ordered pairs (x, y) of C_i(<x, y>/|x|^2); zero iff X is a
    design of harmonic index {i}."""
    P = as_pointset(X)
    n = P.sphere_dim
    return sum(
        (c * gegenbauer(n, i, t) for t, c in normalized_distribution(P, threads).items()),
        Fraction(0),
    )


@dataclass
class DesignReport:
    indices: tuple[int, ...]
    moments: dict[int, Fraction]

    @property
    def verdicts(self) -> dict[int, bool]:
        return {i: m == 0 for i, m in self.moments.items()}

    @property
    def is_design(self) -> bool:
        return all(self.verdicts.values())

    def zero_indices(self) -> list[int]:
        return [i for i, z in self.verdicts.items() if z]


def is_harmonic_T_design(X: PointSet | HalfSelection, T: Iterable[int], threads: int = 1) -> DesignReport:
    T = tuple(sorted(set(T)))
    if any(i < 1 for i in T):
        raise ValueError("harmonic indices start at 1")
    return DesignReport(T, {i: gegenbauer_moment(X, i, threads) for i in T})


def sum_vector(sel: HalfSelection | PointSet) -> ExactVector:
    P = as_pointset(sel)
    a = P.numer.sum(axis=0)
    d = P.denom
    if P.irr is None:
        return ExactVector(tuple(Fraction(int(x), d) for x in a))
    b = P.irr.sum(axis=0)
    return ExactVector(tuple(QuadraticScalar(Fraction(int(x), d), Fraction(int(y), d)) for x, y in zip(a, b)))


# left-kernel sign search ------------------------------------------------------------------


@dataclass
class SignSearchResult:
    status: Literal["found", "none", "infeasible"]
    kernel_dim: int | None
    rank: int | None
    enumerated: int = 0
    witness: np.ndarray | None = field(default=None, repr=False)
    pivots: list[int] = field(default_factory=list, repr=False)
    # False when kernel_dim is only a lower bound (or None: unknown)
    kernel_exact: bool = True


def _as_rational(H: CharacteristicMatrix | ExactMatrix) -> ExactMatrix:
    return H.rational_stack() if isinstance(H, CharacteristicMatrix) else H


def sign_kernel_search(
    H: CharacteristicMatrix | ExactMatrix,
    k_max: int = DEFAULT_KMAX,
    threads: int = 1,
    batch_bits: int = 16,
) -> SignSearchResult:
    """Look for a +-1 vector v with v H = 0 by enumerating the kernel's
    values on its pivot coordinates (first one fixed to +1)."""
    M = _as_rational(H)
    N = M.rows
    r = rank(M)
    k = N - r
    if k == 0:
        return SignSearchResult("none", 0, r, 0)
    if k > k_max:
        return SignSearchResult("infeasible", k, r, 0)
    ker = kernel_basis(M, "left")
    red, kr, pivots = rref_fraction(ker.to_rows())
    assert kr == k
    B = ExactMatrix.from_rows(red)
    D = B.denom
    Bint = np.asarray(B.numer, dtype=np.int64)
    others = np.array([c for c in range(N) if c not in set(pivots)], dtype=np.int64)
    # a cheap first pass on a few columns discards almost every candidate
    probe = others[:32]
    free_bits = k - 1
    total = 1 << free_bits
    bb = min(batch_bits, free_bits)
    low = _sign_table(bb)  # (2^bb, bb) of +-1, lowest index = all +1
    nbatches = total >> bb

    def run(batch: int):
        hi = _sign_row(batch, free_bits - bb)
        S = np.empty((len(low), k), dtype=np.int64)
        S[:, 0] = 1
        S[:, 1:1 + free_bits - bb] = hi
        S[:, 1 + free_bits - bb:] = low
        vals = S @ Bint[:, probe]
        ok = np.flatnonzero(np.all(np.abs(vals) == D, axis=1))
        for idx in ok:
            v = S[idx] @ Bint
            if np.all(np.abs(v) == D):
                return batch * len(low) + int(idx), v // D
        return None

    def finish(hit):
        index, v = hit
        witness = v.astype(np.int8)
        if int_matmul(witness.astype(np.int64)[None, :], M.numer).any():
            raise ArithmeticError("witness failed exact re-verification")
        return SignSearchResult("found", k, r, index + 1, witness, pivots)

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            for hit in ex.map(run, range(nbatches)):
                if hit is not None:
                    return finish(hit)
    else:
        for b in range(nbatches):
            hit = run(b)
            if hit is not None:
                return finish(hit)
    return SignSearchResult("none", k, r, total, None, pivots)


def _sign_row(value: int, width: int) -> np.ndarray:
    return np.array([1 - 2 * ((value >> (width - 1 - t)) & 1) for t in range(width)], dtype=np.int64)


def _sign_table(width: int) -> np.ndarray:
    idx = np.arange(1 << width, dtype=np.int64)[:, None]
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)[None, :]
    return 1 - 2 * ((idx >> shifts) & 1)


def witness_to_half(sel: HalfSelection, witness: np.ndarray) -> HalfSelection:
    """The half whose rows of H are ``witness * rows of H``."""
    return HalfSelection(sel.base, sel.signs * np.asarray(witness, dtype=np.int8))


def gram_orthogonality(Hi: CharacteristicMatrix | ExactMatrix, Hj: CharacteristicMatrix | ExactMatrix) -> bool:
    """True iff transpose(Hi) @ Hj vanishes exactly."""
    A, B = _as_rational(Hi), _as_rational(Hj)
    if A.rows != B.rows:
        raise ValueError("characteristic matrices have different row counts")
    if isinstance(Hi, CharacteristicMatrix) and isinstance(Hj, CharacteristicMatrix):
        if Hi.row_points is not None and Hj.row_points is not None:
            if not np.array_equal(Hi.row_points, Hj.row_points):
                raise ValueError("characteristic matrices use different point orders")
    return not int_matmul(A.numer.T, B.numer).any()


def full_column_rank(H: CharacteristicMatrix | ExactMatrix) -> bool:
    M = _as_rational(H)
    if M.cols > M.rows:
        return False
    # full rank modulo a prime certifies full rank over Q
    return rank_mod(M) == M.cols or rank(M) == M.cols


# greedy local search ---------------------------------------------------------------------


def local_search_half(
    X: PointSet, seed: int = DEFAULT_SEED, max_restarts: int = 1000
) -> HalfSelection | None:
    """Greedy descent on |sum of selected|^2 from seeded random halves.

    Each step flips the pair with the largest decrease (lowest index on ties)
    and stops at zero or at a local minimum, which triggers a restart.
    """
    if X.pairs is None:
        raise ValueError("local search needs an antipodal point set")
    reps = X.pairs[:, 0]
    V = X.numer[reps]
    W = X.irr[reps] if X.irr is not None else None
    n2 = X.scaled_norm2
    G = X.gram_block(reps, X.subset(reps))  # denom^2 <x_p, x_q>
    rng = np.random.default_rng(seed)
    for attempt in range(max_restarts):
        s = rng.choice(np.array([-1, 1], dtype=np.int64), size=len(reps))
        c = G @ s  # c_p = <x_p, S>
        while True:
            gain = s * c
            p = int(np.argmax(gain))
            if gain[p] <= n2:
                break
            c -= 2 * s[p] * G[:, p]
            s[p] = -s[p]
        if not (s @ V).any() and (W is None or not (s @ W).any()):
            log.info("local search succeeded on restart %d", attempt)
            return HalfSelection(X, s.astype(np.int8))
    return None


# index searches ------------------------------------------------------------------------

# beyond this many entries H_i is not materialised
HARMONIC_ENTRY_CAP = 20_000_000
GRAM_ROW_CAP = 6000
# largest column count for which the row-subset rank certificate is attempted
ROW_SUBSET_COL_CAP = 6000


def gegenbauer_gram(sel: HalfSelection | PointSet, i: int) -> ExactMatrix:
    """[C_i(<x, y>/|x|^2)]_{x, y}.  Its kernel is the left kernel of H_i for
    any harmonic basis, since it is a positive multiple of H H^T for an
    orthonormal one."""
    P = as_pointset(sel)
    n2 = P.scaled_norm2
    g = P.gram_block(np.arange(len(P)))
    vals, inv = np.unique(g, return_inverse=True)
    cs = [gegenbauer(P.sphere_dim, i, Fraction(int(v), n2)) for v in vals]
    den = 1
    for c in cs:
        den = den * c.denominator // np.gcd(den, c.denominator)
    ints = np.array([int(c * den) for c in cs], dtype=object if max(abs(int(c * den)) for c in cs) >= 2**62 else np.int64)
    return ExactMatrix(ints[inv.reshape(g.shape)], int(den))


@dataclass
class IndexSearchReport:
    index: int
    route: Literal["harmonic", "gram", "row-subset", "bound"]
    rows: int
    cols: int
    result: SignSearchResult


def _row_subset_rank(sel: HalfSelection, i: int, cols: int) -> int | None:
    """Certify full column rank of H_i from a growing prefix of rows."""
    from .harmonic import characteristic_matrix

    n = len(sel)
    take = min(n, cols + 64)
    while True:
        # evenly spread rows avoid the structured blocks at the start
        rows = np.unique(np.linspace(0, n - 1, take).astype(np.int64))
        H = characteristic_matrix(sel, i, rows=rows)
        if rank_mod(H.rational_stack()) == cols:
            return cols
        if take == n:
            return None
        take = min(n, 2 * take)


def search_index(
    sel: HalfSelection, i: int, k_max: int = DEFAULT_KMAX, threads: int = 1, route: str = "auto"
) -> IndexSearchReport:
    """Is some other half a design of harmonic index {i}?  (i odd)"""
    from .harmonic import characteristic_matrix, harm_dim

    P = sel.base
    n = P.sphere_dim
    rows, cols = len(sel), harm_dim(n, i)
    if route == "auto":
        if rows * cols <= HARMONIC_ENTRY_CAP:
            route = "harmonic"
        elif rows <= GRAM_ROW_CAP:
            route = "gram"
        else:
            route = "row-subset"
    if route == "harmonic":
        H = characteristic_matrix(sel, i)
        res = sign_kernel_search(H, k_max, threads)
    elif route == "gram":
        res = sign_kernel_search(gegenbauer_gram(sel, i), k_max, threads)
    else:
        if P.is_quadratic:
            raise NotImplementedError("row-subset route needs rational coordinates")
        if cols > ROW_SUBSET_COL_CAP:
            # rank <= cols gives k >= rows - cols without building anything
            bound = rows - cols if rows > cols else None
            return IndexSearchReport(i, "bound", rows, cols, SignSearchResult("infeasible", bound, None, 0, kernel_exact=False))
        r = _row_subset_rank(sel, i, cols)
        if r is None:
            res = SignSearchResult("infeasible", rows - cols, None, 0, kernel_exact=False)
        else:
            k = rows - r
            if k > k_max:
                res = SignSearchResult("infeasible", k, r)
            else:
                res = sign_kernel_search(characteristic_matrix(sel, i), k_max, threads)
    return IndexSearchReport(i, route, rows, cols, res)
