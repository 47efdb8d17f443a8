"""Exact elimination over F_p (numpy int64) and over Q (sparse integer rows)."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

# residues are < 10**6, so products of two residues stay far below 2**63
_MAX_P = 10**6


def _as_mod(a, p: int) -> np.ndarray:
    if p > _MAX_P:
        raise ValueError(f"modulus {p} too large for int64 elimination")
    return np.array(a, dtype=np.int64, ndmin=2) % p


def rref_mod_p(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p and its pivot columns."""
    m = _as_mod(a, p).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r, c:] = (m[r, c:] * inv) % p
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            # the pivot row is zero left of c
            f = m[others, c][:, None]
            m[others, c:] = (m[others, c:] - f * m[r, c:][None, :]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank_mod_p(a, p: int) -> int:
    return len(rref_mod_p(a, p)[1])


def nullspace_mod_p(a, p: int, ncols: int | None = None) -> np.ndarray:
    """Basis of {x : a x = 0} over F_p, one vector per row.

    ``ncols`` is required when ``a`` has no rows.
    """
    arr = np.asarray(a)
    if arr.size == 0:
        if ncols is None:
            ncols = arr.shape[1] if arr.ndim == 2 else 0
        return np.eye(ncols, dtype=np.int64)
    red, pivots = rref_mod_p(arr, p)
    cols = red.shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = (-red[row, fc]) % p
    return basis


# --- rationals -------------------------------------------------------------

def _integer_rows(matrix: Sequence[Sequence]) -> tuple[list[dict[int, int]], Fraction]:
    """Sparse integer rows plus the factor by which clearing denominators scaled det."""
    rows = []
    scale = Fraction(1)
    for row in matrix:
        fr = {j: Fraction(v) for j, v in enumerate(row) if v != 0}
        den = 1
        for v in fr.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        rows.append({j: int(v * den) for j, v in fr.items()})
        scale *= den
    return rows, scale


def _forward(rows: list[dict[int, int]], ncols: int):
    """Fraction-free sparse elimination; the shortest candidate row pivots.

    Rows are updated in place as ``(pv*row - f*pivot_row) / content``. Returns
    the pivots as (row, col) in elimination order, the sign of the implied row
    permutation, and the factor by which the row updates scaled the
    determinant.
    """
    remaining = list(range(len(rows)))
    pivots: list[tuple[dict[int, int], int]] = []
    sign = 1
    num, den = 1, 1
    for c in range(ncols):
        cand = [i for i in remaining if c in rows[i]]
        if not cand:
            continue
        k = min(cand, key=lambda i: len(rows[i]))
        # parity of moving row k to the front of the remaining block
        pos = remaining.index(k)
        if pos % 2:
            sign = -sign
        remaining.pop(pos)
        prow = rows[k]
        pv = prow[c]
        for i in cand:
            if i == k:
                continue
            row = rows[i]
            f = row.pop(c)
            g = math.gcd(pv, f)
            mp, mf = pv // g, f // g
            if mp != 1:
                for j in row:
                    row[j] *= mp
            for j, v in prow.items():
                if j == c:
                    continue
                nv = row.get(j, 0) - mf * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
            content = 0
            for v in row.values():
                content = math.gcd(content, v)
                if content == 1:
                    break
            if content > 1:
                for j in row:
                    row[j] //= content
            else:
                content = 1
            num *= mp
            den *= content
        pivots.append((prow, c))
    return pivots, sign, Fraction(num, den)


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square matrix over Q."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    rows, scale = _integer_rows(matrix)
    pivots, sign, growth = _forward(rows, n)
    if len(pivots) < n:
        return Fraction(0)
    # after the implied row permutation the reduced matrix is upper triangular
    det = Fraction(sign)
    for prow, c in pivots:
        det *= prow[c]
    return det / (scale * growth)


def rank_rational(matrix: Sequence[Sequence], ncols: int | None = None) -> int:
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    return len(_forward(_integer_rows(matrix)[0], ncols)[0])


def rref_rational(matrix: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon rows (sparse dicts, pivot entry 1) and pivot columns."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    pivots = _forward(_integer_rows(matrix)[0], ncols)[0]
    reduced: list[tuple[dict[int, Fraction], int]] = []
    for prow, c in pivots:
        pv = prow[c]
        reduced.append(({j: Fraction(v, pv) for j, v in prow.items()}, c))
    # back substitution, last pivot first
    for idx in range(len(reduced) - 1, -1, -1):
        prow, c = reduced[idx]
        for other, _oc in reduced[:idx]:
            f = other.get(c)
            if f:
                for j, v in prow.items():
                    nv = other.get(j, 0) - f * v
                    if nv:
                        other[j] = nv
                    else:
                        other.pop(j, None)
    return [row for row, _ in reduced], [c for _, c in reduced]


def nullspace_rational(matrix: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right nullspace over Q."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    rows, pivots = rref_rational(matrix, ncols)
    pivset = set(pivots)
    basis = []
    for fc in range(ncols):
        if fc in pivset:
            continue
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v = row.get(fc)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix (dense, O(n^3))."""
    m = [list(map(int, row)) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1] if n else 1


def int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer matrix product.

    When every partial sum is bounded by ``max|a| * max|b| * k < 2**53`` the
    product goes through float64 BLAS, where all intermediate values are
    integers of at most 53 bits and therefore exact. Larger bounds fall back to
    int64 (``< 2**62``) and then to Python ints.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.dtype != object and b.dtype != object:
        amax = int(np.abs(a).max()) if a.size else 0
        bmax = int(np.abs(b).max()) if b.size else 0
        bound = amax * bmax * max(a.shape[1], 1)
        if bound < 2**53:
            return (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        if bound < 2**62:
            return a.astype(np.int64) @ b.astype(np.int64)
    return np.array(a, dtype=object) @ np.array(b, dtype=object)


def solve_mod_p(a, b, p: int) -> np.ndarray | None:
    """One solution x of a x = b over F_p, or None when the system is inconsistent."""
    a = _as_mod(a, p)
    b = np.array(b, dtype=np.int64).reshape(-1, 1) % p
    red, pivots = rref_mod_p(np.hstack([a, b]), p)
    cols = a.shape[1]
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = red[row, cols]
    return x


def solve_rational(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    cols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    rows, pivots = rref_rational(aug, cols + 1)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for row, pc in zip(rows, pivots):
        x[pc] = row.get(cols, Fraction(0))
    return x
