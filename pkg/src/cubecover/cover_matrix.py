"""The subset-indexed coefficient matrix M and its exact verification.

Rows and columns are indexed by subsets of {1..n} of size at most r, in
:class:`~cubecover.lattice.RankOrder`. For ``|A| < n - r`` and disjoint A, B
the entry is ``(-1)^(n-r-|A|) * C(n-1-|A|-|B|, r-|B|)``; other pairs are zero.
When ``r >= n/2`` the rows with ``n-r <= |A| <= r`` are unit rows with the 1
at the complement of A.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TextIO

import numpy as np

from . import linalg
from .lattice import RankOrder, complement, enumerate_up_to_rank, format_mask, weight
from .report import Report
from .scalar import binomial

MAX_N = 20
MAX_DIM = 4096
LOW = "low"
HIGH = "high"


class RegimeError(ValueError):
    pass


def regime(n: int, r: int) -> str:
    return LOW if 2 * r < n else HIGH


def entry_value(n: int, r: int, a: int, b: int) -> int:
    """Signed binomial for a disjoint pair of sizes (a, b) in a formula row."""
    sign = -1 if (n - r - a) % 2 else 1
    return sign * binomial(n - 1 - a - b, r - b)


def entry(n: int, r: int, A: int, B: int) -> int:
    a, b = weight(A), weight(B)
    if a > r or b > r:
        raise ValueError(f"subsets must have size <= r={r}, got |A|={a}, |B|={b}")
    if (A | B) >> n:
        raise ValueError(f"subsets must lie inside {{1..{n}}}")
    if a >= n - r:
        return 1 if B == complement(A, n) else 0
    if A & B:
        return 0
    return entry_value(n, r, a, b)


@dataclass(frozen=True)
class SubsetMatrix:
    n: int
    r: int
    order: RankOrder
    entries: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.order)

    @property
    def regime(self) -> str:
        return regime(self.n, self.r)

    def __getitem__(self, ab):
        A, B = ab
        return int(self.entries[self.order.index(A), self.order.index(B)])

    def dump(self, out: TextIO) -> None:
        out.write(f"n={self.n} r={self.r} dim={self.dim}\n")
        for row in self.entries.tolist():
            out.write(" ".join(str(int(v)) for v in row) + "\n")


def _check_params(n: int, r: int) -> None:
    if n < 0 or not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")
    if n > MAX_N:
        raise ValueError(f"dimension guard: n={n} exceeds {MAX_N}")
    dim = sum(binomial(n, i) for i in range(r + 1))
    if dim > MAX_DIM:
        # dense storage beyond this is refused rather than allocated
        raise ValueError(f"dimension guard: (n={n}, r={r}) gives dim {dim} > {MAX_DIM}")


def build(n: int, r: int) -> SubsetMatrix:
    _check_params(n, r)
    order = enumerate_up_to_rank(n, r)
    masks = np.array(order.masks, dtype=np.int64)
    sizes = np.array([weight(m) for m in order.masks], dtype=np.int64)
    by_size = np.zeros((r + 1, r + 1), dtype=np.int64)
    for a in range(min(r, n - r - 1) + 1):
        for b in range(r + 1):
            by_size[a, b] = entry_value(n, r, a, b)
    disjoint = (masks[:, None] & masks[None, :]) == 0
    formula_row = sizes < n - r
    m = np.where(disjoint & formula_row[:, None], by_size[sizes[:, None], sizes[None, :]], 0)
    full = (1 << n) - 1
    for i in np.nonzero(~formula_row)[0]:
        m[i, order.index(full ^ int(masks[i]))] = 1
    m.setflags(write=False)
    return SubsetMatrix(n, r, order, m)


def _first_mismatch(product: np.ndarray, order: RankOrder, offset: int = 0):
    bad = np.argwhere(product != np.eye(product.shape[0], dtype=product.dtype))
    if bad.size == 0:
        return None
    i, j = (int(x) for x in bad[0])
    return {
        "A": format_mask(order[i + offset]),
        "B": format_mask(order[j + offset]),
        "expected": 1 if i == j else 0,
        "got": int(product[i, j]),
        "mismatches": int(bad.shape[0]),
    }


def square(m: SubsetMatrix) -> np.ndarray:
    return linalg.int_matmul(m.entries, m.entries)


def verify_involution(n: int, r: int) -> Report:
    """M @ M == I exactly, for the regime r < n/2."""
    if regime(n, r) != LOW:
        raise RegimeError(f"the involution check needs r < n/2; use verify_high_regime for n={n}, r={r}")
    rep = Report("verify-involution", {"n": n, "r": r})
    m = build(n, r)
    bad = _first_mismatch(square(m), m.order)
    if bad is None:
        rep.add(True, n=n, r=r, dim=m.dim, check="M*M=I")
    else:
        rep.add(False, n=n, r=r, dim=m.dim, check="M*M=I", **bad)
    return rep.stop_clock()


def verify_high_regime(n: int, r: int) -> Report:
    """Block structure and nonsingularity of M for n/2 <= r <= n.

    The upper-left block (sizes below n - r) must square to the identity, the
    rows of sizes n - r .. r must form the complement permutation with zeros
    to its left, and M must be nonsingular by exact elimination. Whether the
    whole of M squares to I is recorded without being asserted.
    """
    if regime(n, r) != HIGH:
        raise RegimeError(f"the high-regime check needs r >= n/2; use verify_involution for n={n}, r={r}")
    rep = Report("verify-high-regime", {"n": n, "r": r})
    m = build(n, r)
    e = m.entries
    k = sum(binomial(n, i) for i in range(n - r))
    dim = m.dim
    common = {"n": n, "r": r, "dim": dim, "top_block": k}

    m0 = e[:k, :k]
    bad = _first_mismatch(linalg.int_matmul(m0, m0), m.order) if k else None
    rep.add(bad is None, check="M0*M0=I", **common, **(bad or {}))

    left = e[k:, :k]
    nz = np.argwhere(left != 0)
    rec = {}
    if nz.size:
        i, j = (int(x) for x in nz[0])
        rec = {"A": format_mask(m.order[k + i]), "B": format_mask(m.order[j]), "got": int(left[i, j])}
    rep.add(nz.size == 0, check="lower-left block zero", **common, **rec)

    br = e[k:, k:]
    perm_ok = True
    rec = {}
    for i in range(dim - k):
        A = m.order[k + i]
        target = m.order.index(complement(A, n)) - k
        expect = np.zeros(dim - k, dtype=br.dtype)
        expect[target] = 1
        if not np.array_equal(br[i], expect):
            perm_ok = False
            rec = {"A": format_mask(A)}
            break
    if perm_ok:
        perm_ok = bool(np.array_equal(linalg.int_matmul(br, br), np.eye(dim - k, dtype=np.int64)))
        if not perm_ok:
            rec = {"detail": "bottom-right block is not an involution"}
    rep.add(perm_ok, check="bottom-right complement permutation", **common, **rec)

    det = linalg.determinant(e.tolist())
    rep.add(det != 0, check="det M != 0", determinant=det, **common)

    whole = _first_mismatch(square(m), m.order)
    rep.add(None, check="full M*M=I (not asserted)", holds=whole is None, **common, **(whole or {}))
    return rep.stop_clock()


def solve_homogeneous(m: SubsetMatrix):
    """Rational nullspace basis of M; an empty list means only the zero solution."""
    return linalg.nullspace_rational(m.entries.tolist(), m.dim)
