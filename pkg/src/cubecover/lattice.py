"""Subset masks, rank-ordered enumeration and zeta/Moebius transforms.

Bit ``i`` of a mask stands for element ``i + 1`` (equivalently coordinate
``x_{i+1}`` of a cube vertex).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .scalar import FieldKind, Fp, FieldMismatch, Scalar

MAX_N = 24


def weight(mask: int) -> int:
    return bin(mask).count("1")


def members(mask: int) -> list[int]:
    """1-based elements of ``mask``."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i + 1)
        mask >>= 1
        i += 1
    return out


def from_members(elems) -> int:
    mask = 0
    for e in elems:
        mask |= 1 << (e - 1)
    return mask


def complement(mask: int, n: int) -> int:
    return ((1 << n) - 1) ^ mask


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, in decreasing numeric order."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def format_mask(mask: int) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_N:
        raise ValueError(f"dimension n must lie in [0, {MAX_N}], got {n}")


@dataclass(frozen=True)
class RankOrder:
    """Subsets of {1..n} of size <= r, ordered by (size, mask value)."""

    n: int
    r: int
    masks: tuple[int, ...]
    _pos: dict = field(repr=False, compare=False)

    def __len__(self):
        return len(self.masks)

    def __iter__(self):
        return iter(self.masks)

    def __getitem__(self, i):
        return self.masks[i]

    def index(self, mask: int) -> int:
        return self._pos[mask]

    def __contains__(self, mask):
        return mask in self._pos

    def rank_range(self, size: int) -> range:
        """Positions holding the subsets of exactly ``size`` elements."""
        lo = sum(math.comb(self.n, i) for i in range(min(size, self.r + 1)))
        hi = lo + (math.comb(self.n, size) if 0 <= size <= self.r else 0)
        return range(lo, hi)


def enumerate_up_to_rank(n: int, r: int) -> RankOrder:
    _check_n(n)
    if r < 0 or r > n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")
    masks: list[int] = []
    for size in range(r + 1):
        level = [from_members(c) for c in combinations(range(1, n + 1), size)]
        level.sort()
        masks.extend(level)
    return RankOrder(n, r, tuple(masks), {m: i for i, m in enumerate(masks)})


@dataclass(frozen=True)
class LatticeTable:
    """Function from the 2**n subsets of {1..n} to scalars of one field."""

    n: int
    field: FieldKind
    values: tuple

    def __post_init__(self):
        _check_n(self.n)
        if len(self.values) != 1 << self.n:
            raise ValueError(f"table for n={self.n} needs {1 << self.n} entries, got {len(self.values)}")

    @classmethod
    def from_values(cls, n: int, field: FieldKind, values: Sequence) -> "LatticeTable":
        return cls(n, field, tuple(field.element(v) for v in values))

    @classmethod
    def zeros(cls, n: int, field: FieldKind) -> "LatticeTable":
        return cls(n, field, (field.zero,) * (1 << n))

    def __getitem__(self, mask: int) -> Scalar:
        return self.values[mask]

    def __len__(self):
        return len(self.values)


# The transforms have integer coefficients, so they run on plain ints: residues
# for F_p, and numerators over a common denominator for the rationals.

def _to_ints(t: LatticeTable) -> tuple[list[int], int]:
    if t.field.is_prime:
        return [v.value for v in t.values], 1
    den = 1
    for v in t.values:
        d = v.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    if den == 1:
        return [v.numerator for v in t.values], 1
    return [v.numerator * (den // v.denominator) for v in t.values], den


def _from_ints(n: int, field: FieldKind, ints: list[int], den: int) -> LatticeTable:
    if field.is_prime:
        p = field.p
        return LatticeTable(n, field, tuple(Fp(v, p) for v in ints))
    if den == 1:
        return LatticeTable(n, field, tuple(Fraction(v) for v in ints))
    return LatticeTable(n, field, tuple(Fraction(v, den) for v in ints))


def _butterfly(a: list[int], n: int, sign: int, p: int | None) -> None:
    size = 1 << n
    for i in range(n):
        bit = 1 << i
        step = bit << 1
        for base in range(0, size, step):
            for m in range(base + bit, base + step):
                a[m] += sign * a[m ^ bit]
    if p is not None:
        for m in range(size):
            a[m] %= p


def table_ints(t: LatticeTable) -> tuple[list[int], int]:
    """Integer image of a table: residues, or numerators over a common denominator."""
    return _to_ints(t)


def transform_ints(a: list[int], n: int, inverse: bool = False, p: int | None = None) -> None:
    """In-place zeta (or Moebius) transform of a list of 2**n ints, reduced mod p if given."""
    _butterfly(a, n, -1 if inverse else 1, p)


def zeta_transform(t: LatticeTable) -> LatticeTable:
    """out[J] = sum of t[B] over B subset of J, in O(n 2^n)."""
    a, den = _to_ints(t)
    _butterfly(a, t.n, 1, t.field.p)
    return _from_ints(t.n, t.field, a, den)


def mobius_transform(t: LatticeTable) -> LatticeTable:
    """out[J] = sum over A subset of J of (-1)^|J\\A| t[A]; inverse of zeta."""
    a, den = _to_ints(t)
    _butterfly(a, t.n, -1, t.field.p)
    return _from_ints(t.n, t.field, a, den)


def _naive(t: LatticeTable, signed: bool) -> LatticeTable:
    p = t.field.p
    # sum plain ints: residues, or numerators scaled to a shared denominator
    if p:
        vals, den = [v.value for v in t.values], 1
    else:
        den = math.lcm(*(v.denominator for v in t.values))
        vals = [v.numerator * (den // v.denominator) for v in t.values]
    odd = [weight(m) & 1 for m in range(1 << t.n)] if signed else None
    out = []
    for j in range(1 << t.n):
        plus, minus = [], []
        for b in submasks(j):
            (minus if signed and odd[j] != odd[b] else plus).append(vals[b])
        acc = sum(plus) - sum(minus)
        out.append(Fp(acc, p) if p else Fraction(acc, den))
    return LatticeTable(t.n, t.field, tuple(out))


def naive_zeta_transform(t: LatticeTable) -> LatticeTable:
    """Submask-enumeration reference for :func:`zeta_transform`."""
    return _naive(t, signed=False)


def naive_mobius_transform(t: LatticeTable) -> LatticeTable:
    return _naive(t, signed=True)


def zeta(t: LatticeTable, verify: bool = False) -> LatticeTable:
    """:func:`zeta_transform`, optionally cross-checked against the naive loop."""
    out = zeta_transform(t)
    if verify and out != naive_zeta_transform(t):
        raise AssertionError("fast zeta transform disagrees with naive summation")
    return out


def mobius(t: LatticeTable, verify: bool = False) -> LatticeTable:
    out = mobius_transform(t)
    if verify and out != naive_mobius_transform(t):
        raise AssertionError("fast Moebius transform disagrees with naive summation")
    return out


def check_same_field(*tables: LatticeTable) -> None:
    fields = {t.field for t in tables}
    if len(fields) > 1:
        raise FieldMismatch(f"tables over different fields: {sorted(map(str, fields))}")
