"""Exact and modular linear algebra over Q(w).

* fraction-free (Bareiss) determinant and rank over Z[w],
* Gauss-Jordan elimination over Q(w) for small systems,
* numpy-backed row reduction over F_p,
* multimodular reconstruction of kernel vectors over Q(w).
"""

from __future__ import annotations

import logging
from typing import Callable, Sequence

import gmpy2
import numpy as np

from .field import (
    ONE,
    ZERO,
    BadPrime,
    FieldElement,
    ModularImage,
    fe,
    lift_pair,
    rational_reconstruction,
    valid_primes,
)

log = logging.getLogger(__name__)

Matrix = list[list[FieldElement]]


def _integral_rows(M: Sequence[Sequence]) -> tuple[Matrix, FieldElement]:
    """Scale each row into Z[w]; return the scaled matrix and the total scale."""
    out = []
    scale = ONE
    for row in M:
        row = [fe(v) for v in row]
        den = 1
        for v in row:
            den = gmpy2.lcm(den, v.denominator)
        den = int(den)
        out.append([v * den for v in row])
        scale = scale * den
    return out, scale


def _exact_div(a: FieldElement, b: FieldElement) -> FieldElement:
    q = a / b
    assert q.denominator == 1, "Bareiss division left Z[w]"
    return q


def det_bareiss(M: Sequence[Sequence]) -> FieldElement:
    n = len(M)
    if n == 0:
        return ONE
    A, scale = _integral_rows(M)
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not A[k][k]:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return ZERO
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                A[i][j] = _exact_div(akk * A[i][j] - aik * A[k][j], prev)
        prev = akk
    return A[n - 1][n - 1] * sign / scale


def rank_bareiss(M: Sequence[Sequence]) -> int:
    """Rank by fraction-free row echelon form (column skipping allowed)."""
    if not M:
        return 0
    A, _ = _integral_rows(M)
    rows, cols = len(A), len(A[0])
    prev = ONE
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        arc = A[r][c]
        for i in range(r + 1, rows):
            aic = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(c + 1, cols):
                row_i[j] = _exact_div(arc * row_i[j] - aic * row_r[j], prev)
            row_i[c] = ZERO
        prev = arc
        r += 1
        if r == rows:
            break
    return r


def rref(M: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q(w) and the pivot columns."""
    A = [[fe(v) for v in row] for row in M]
    if not A:
        return A, []
    rows, cols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inverse()
        A[r] = [v * inv for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def nullspace(M: Sequence[Sequence], ncols: int | None = None) -> list[list[FieldElement]]:
    """Basis of the right kernel over Q(w), one vector per free column."""
    if not M:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(M)
    cols = len(R[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for i, c in enumerate(pivots):
            v[c] = -R[i][f]
        basis.append(v)
    return basis


def solve(M: Sequence[Sequence], rhs: Sequence) -> list[FieldElement] | None:
    """A solution of M v = rhs (unique if M has full column rank), or None."""
    aug = [list(row) + [b] for row, b in zip(M, rhs)]
    R, pivots = rref(aug)
    cols = len(aug[0]) - 1
    if cols in pivots:
        return None
    v = [ZERO] * cols
    for i, c in enumerate(pivots):
        v[c] = R[i][cols]
    return v


def rank(M: Sequence[Sequence]) -> int:
    return len(rref(M)[1])


# modular ---------------------------------------------------------------------

def rref_mod(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int], list[int]]:
    """Gauss-Jordan over F_p (p < 2**31).

    Returns the reduced matrix, the pivot columns, and the original indices
    of the rows chosen as pivots (these rows form an invertible minor with
    the pivot columns).
    """
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    perm = np.arange(rows)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
            perm[[r, piv]] = perm[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r]) % p) % p
        pivots.append(c)
        r += 1
    return A, pivots, [int(i) for i in perm[: len(pivots)]]


def rank_mod(A: np.ndarray, p: int) -> int:
    return len(rref_mod(A, p)[1])


def kernel_vector_mod(R: np.ndarray, pivots: list[int], p: int) -> np.ndarray | None:
    """First RREF kernel vector (free column = first non-pivot column)."""
    cols = R.shape[1]
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    if not free:
        return None
    f = free[0]
    v = np.zeros(cols, dtype=np.int64)
    v[f] = 1
    for i, c in enumerate(pivots):
        v[c] = (-R[i, f]) % p
    return v


def reduce_matrix(M: Sequence[Sequence], img: ModularImage) -> np.ndarray:
    return np.array([[img.reduce(v) for v in row] for row in M], dtype=np.int64)


class ReconstructionFailed(RuntimeError):
    pass


def reconstruct_kernel_vector(
    reduced: Callable[[ModularImage], np.ndarray],
    verify: Callable[[list[FieldElement]], bool],
    *,
    prime_start: int = 2**30,
    max_primes: int = 400,
) -> tuple[list[FieldElement], dict]:
    """Exact first RREF kernel vector over Q(w) via CRT + rational reconstruction.

    ``reduced(img)`` must return the system reduced through ``img``.  Each
    prime contributes both embeddings of w, so the pair (a_j, b_j) of every
    coordinate is recovered modulo p.  Candidates are returned only after
    ``verify`` accepts them exactly.
    """
    ref_pivots = None
    modulus = 1
    acc_a = acc_b = None
    last = None
    used = 0
    for p in valid_primes(prime_start):
        if used >= max_primes:
            break
        try:
            i1, i2 = ModularImage.pair(p)
            A1, A2 = reduced(i1), reduced(i2)
        except BadPrime:
            continue
        R1, piv1, _ = rref_mod(A1, p)
        R2, piv2, _ = rref_mod(A2, p)
        if piv1 != piv2:
            continue
        if ref_pivots is None or len(piv1) > len(ref_pivots) or (
            len(piv1) == len(ref_pivots) and piv1 < ref_pivots
        ):
            if ref_pivots is not None:
                log.debug("restarting reconstruction: better pivot set at p=%d", p)
            ref_pivots = piv1
            modulus, acc_a, acc_b, last = 1, None, None, None
        elif piv1 != ref_pivots:
            continue
        v1 = kernel_vector_mod(R1, piv1, p)
        v2 = kernel_vector_mod(R2, piv2, p)
        if v1 is None:
            raise ReconstructionFailed("system has full column rank")
        used += 1
        a_mod = []
        b_mod = []
        for x1, x2 in zip(v1.tolist(), v2.tolist()):
            a, b = lift_pair(x1, x2, i1, i2)
            a_mod.append(a)
            b_mod.append(b)
        if acc_a is None:
            acc_a, acc_b, modulus = a_mod, b_mod, p
        else:
            inv = pow(modulus % p, -1, p)
            acc_a = [_crt(x, modulus, y, p, inv) for x, y in zip(acc_a, a_mod)]
            acc_b = [_crt(x, modulus, y, p, inv) for x, y in zip(acc_b, b_mod)]
            modulus *= p
        cand = _reconstruct(acc_a, acc_b, modulus)
        if cand is None:
            continue
        if cand == last and verify(cand):
            return cand, {"primes_used": used, "modulus_bits": int(modulus).bit_length(),
                          "pivots": ref_pivots}
        last = cand
    raise ReconstructionFailed(f"no verified kernel vector after {used} primes")


def _crt(x: int, m: int, y: int, p: int, inv_m: int) -> int:
    t = (y - x) * inv_m % p
    return x + m * t


def _reconstruct(acc_a, acc_b, modulus):
    out = []
    for a, b in zip(acc_a, acc_b):
        qa = rational_reconstruction(a, modulus)
        if qa is None:
            return None
        qb = rational_reconstruction(b, modulus)
        if qb is None:
            return None
        out.append(FieldElement(qa, qb))
    return out
