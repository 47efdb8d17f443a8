"""Multilinear polynomials on the Boolean cube {0,1}^n.

On the cube x^k = x, so every polynomial agrees with a unique multilinear one
of no larger degree. For a multilinear polynomial the sum of the coefficients
of terms containing exactly the variables in J is just the coefficient of the
monomial prod_{j in J} x_j; we call the table of these sums ``alpha``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, TextIO

from .lattice import (
    LatticeTable,
    format_mask,
    mobius_transform,
    submasks,
    table_ints,
    transform_ints,
    weight,
    zeta_transform,
)
from .report import Report
from .scalar import FieldKind, FieldMismatch, Scalar, binomial, format_scalar

# degree of the zero polynomial; compares below every integer degree
ZERO_DEGREE = -math.inf


@dataclass(frozen=True)
class MultilinearPoly:
    n: int
    field: FieldKind
    coeffs: Mapping[int, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for mask, c in self.coeffs.items():
            if mask < 0 or mask >> self.n:
                raise ValueError(f"monomial mask {mask:#x} does not fit n={self.n}")
            c = self.field.element(c)
            if c != 0:
                clean[mask] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def from_table(cls, t: LatticeTable) -> "MultilinearPoly":
        return cls(t.n, t.field, {m: v for m, v in enumerate(t.values) if v != 0})

    @classmethod
    def constant(cls, n: int, field: FieldKind, c=1) -> "MultilinearPoly":
        return cls(n, field, {0: c})

    @property
    def degree(self):
        if not self.coeffs:
            return ZERO_DEGREE
        return max(weight(m) for m in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, mask: int) -> Scalar:
        return self.coeffs.get(mask, self.field.zero)

    def coeff_table(self) -> LatticeTable:
        vals = [self.field.zero] * (1 << self.n)
        for m, c in self.coeffs.items():
            vals[m] = c
        return LatticeTable(self.n, self.field, tuple(vals))

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        _same(self, other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, self.field.zero) + c
        return MultilinearPoly(self.n, self.field, out)

    def scale(self, c) -> "MultilinearPoly":
        c = self.field.element(c)
        return MultilinearPoly(self.n, self.field, {m: v * c for m, v in self.coeffs.items()})

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for m, c in self.coeffs.items():
            mono = "*".join(f"x{i}" for i in _members(m))
            terms.append(format_scalar(c) if not mono else f"{format_scalar(c)}*{mono}")
        return " + ".join(terms)


def _members(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def _same(f: MultilinearPoly, g: MultilinearPoly) -> None:
    if f.field != g.field:
        raise FieldMismatch(f"polynomials over {f.field} and {g.field}")
    if f.n != g.n:
        raise ValueError(f"polynomials in {f.n} and {g.n} variables")


def evaluate(f: MultilinearPoly, v: int, field: FieldKind | None = None) -> Scalar:
    """Value of f at the cube vertex with support ``v``."""
    if field is not None and field != f.field:
        raise FieldMismatch(f"polynomial over {f.field} evaluated in {field}")
    if v < 0 or v >> f.n:
        raise ValueError(f"vertex {v:#x} does not fit n={f.n}")
    acc = f.field.zero
    for m, c in f.coeffs.items():
        if m & v == m:
            acc = acc + c
    return acc


def eval_table(f: MultilinearPoly) -> LatticeTable:
    return zeta_transform(f.coeff_table())


def alpha_of(f: MultilinearPoly) -> LatticeTable:
    """Coefficient sums recovered from the values on the cube by Moebius inversion."""
    return mobius_transform(eval_table(f))


def alpha_from_values(t: LatticeTable) -> LatticeTable:
    return mobius_transform(t)


def check_star(f: MultilinearPoly, r: int) -> Report:
    """alpha_J = 0 for every |J| >= n - r."""
    n = f.n
    rep = Report("check-star", {"n": n, "r": r, "degree": _deg_str(f)})
    alpha = alpha_of(f)
    for J in sorted(range(1 << n), key=lambda m: (weight(m), m)):
        if weight(J) >= n - r and alpha[J] != 0:
            rep.add(False, J=format_mask(J), alpha=alpha[J])
            return rep.stop_clock()
    rep.add(True, checked_sets=sum(binomial(n, s) for s in range(max(n - r, 0), n + 1)))
    return rep.stop_clock()


def _deg_str(f: MultilinearPoly) -> str:
    return "-inf" if f.is_zero() else str(f.degree)


def graded_subset_sums(alpha: LatticeTable, t: int) -> list:
    """g[J] = sum of alpha[B] over B subset of J with |B| = t."""
    n = alpha.n
    vals = [v if weight(m) == t else alpha.field.zero for m, v in enumerate(alpha.values)]
    return list(zeta_transform(LatticeTable(n, alpha.field, tuple(vals))).values)


def relation_rhs(alpha: LatticeTable, r: int, J: int, graded: list[list] | None = None):
    """Right-hand side of the linear relation expressing alpha_J, |J| = s > r."""
    s = weight(J)
    r_star = min(s, r)
    total = alpha.field.zero
    for t in range(r_star + 1):
        inner = graded[t][J] if graded else sum(
            (alpha[B] for B in submasks(J) if weight(B) == t), alpha.field.zero)
        coef = (-1 if (s - r_star) % 2 else 1) * binomial(s - 1 - t, r_star - t)
        total = total + coef * inner
    return total


def check_double_star_relation(f: MultilinearPoly, r: int) -> Report:
    """For f vanishing on every vertex of weight > r, check the linear relation
    between alpha_J (|J| > r) and the low-order alpha_B for every such J.
    """
    n = f.n
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}")
    rep = Report("check-relation", {"n": n, "r": r})
    p = f.field.p
    # the relation is homogeneous, so rationals can be checked on numerators
    # over a common denominator
    vals, _den = table_ints(f.coeff_table())
    transform_ints(vals, n, p=p)
    weights = [weight(m) for m in range(1 << n)]
    for v in range(1 << n):
        if weights[v] > r and vals[v] != 0:
            rep.add(False, check="precondition", vertex=format_mask(v),
                    value=f.field.element(vals[v]) if p else "nonzero",
                    detail="f is nonzero at a vertex of weight > r")
            return rep.stop_clock()
    alpha = vals
    transform_ints(alpha, n, inverse=True, p=p)
    graded = []
    for t in range(r + 1):
        g = [a if weights[m] == t else 0 for m, a in enumerate(alpha)]
        transform_ints(g, n, p=p)
        graded.append(g)
    checked = 0
    for J in range(1 << n):
        s = weights[J]
        if s <= r:
            continue
        checked += 1
        sign = -1 if (s - r) % 2 else 1
        rhs = sign * sum(binomial(s - 1 - t, r - t) * graded[t][J] for t in range(r + 1))
        lhs = alpha[J]
        if p is not None:
            rhs %= p
        if lhs != rhs:
            rep.add(False, check="relation", J=format_mask(J), alpha=lhs, rhs=rhs)
            return rep.stop_clock()
    rep.add(True, check="relation", sets=checked)
    return rep.stop_clock()


@dataclass(frozen=True)
class WeightProfile:
    """Values of a symmetric polynomial at the vertices of weight 0..n."""

    n: int
    r: int
    field: FieldKind
    values: tuple
    degree: int

    def __len__(self):
        return len(self.values)


def construct_extremal(n: int, r: int, field: FieldKind) -> WeightProfile:
    """prod_{s=r+1}^{n} (x_1 + ... + x_n - s), tabulated by vertex weight."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")
    if field.is_prime and field.p <= n:
        raise ValueError(f"characteristic {field.p} must exceed n={n}")
    vals = []
    for w in range(n + 1):
        prod = field.one
        for s in range(r + 1, n + 1):
            prod = prod * field.element(w - s)
        vals.append(prod)
    return WeightProfile(n, r, field, tuple(vals), n - r)


def check_extremal(profile: WeightProfile) -> Report:
    rep = Report("extremal", {"n": profile.n, "r": profile.r, "field": str(profile.field)})
    for w, v in enumerate(profile.values):
        want_zero = w > profile.r
        rep.add((v == 0) == want_zero, weight=w, value=v, expected="zero" if want_zero else "nonzero")
    return rep.stop_clock()


# --- text format -------------------------------------------------------------

def read_poly(stream: TextIO | Iterable[str]) -> MultilinearPoly:
    """Parse ``n=<N> field=<rational|fp:P>`` followed by ``<coef> <mask-hex>`` lines."""
    header = None
    terms: dict[int, Scalar] = {}
    for lineno, raw in enumerate(stream, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = dict(tok.split("=", 1) for tok in line.split())
            try:
                n = int(parts["n"])
                field = FieldKind.parse(parts["field"])
            except (KeyError, ValueError) as exc:
                raise ValueError(f"line {lineno}: bad header {line!r}") from exc
            header = (n, field)
            continue
        toks = line.split()
        if len(toks) != 2:
            raise ValueError(f"line {lineno}: expected '<coefficient> <mask-hex>', got {line!r}")
        try:
            c = header[1].element(toks[0])
            mask = int(toks[1], 16)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
        terms[mask] = terms.get(mask, header[1].zero) + c
    if header is None:
        raise ValueError("missing header line")
    return MultilinearPoly(header[0], header[1], terms)


def write_poly(f: MultilinearPoly, out: TextIO) -> None:
    out.write(f"n={f.n} field={f.field}\n")
    for m, c in f.coeffs.items():
        out.write(f"{format_scalar(c)} {m:x}\n")


def describe_alpha(alpha: LatticeTable) -> list[dict]:
    return [{"J": format_mask(m), "alpha": v} for m, v in
            sorted(enumerate(alpha.values), key=lambda mv: (weight(mv[0]), mv[0])) if v != 0]
