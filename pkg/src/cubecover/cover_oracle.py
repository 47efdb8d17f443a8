"""Brute-force minimal degree of a polynomial that vanishes on the cube vertices
of weight > r and is nonzero on those of weight <= r.

For each degree d the multilinear polynomials of degree <= d that vanish on
the heavy vertices form a linear space (a nullspace). A degree-d cover exists
iff some element of that space is nonzero on every light vertex. If the space
kills some light vertex outright, that vertex is a *blocker*: its evaluation
functional is a linear combination of the heavy-vertex functionals, and the
combination is stored as a checkable certificate. Otherwise a witness is
assembled by adding basis elements one light vertex at a time.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .cube_poly import MultilinearPoly, check_star, construct_extremal, evaluate
from .lattice import enumerate_up_to_rank, format_mask, transform_ints, weight
from .report import Report
from .scalar import FieldKind, Fp

MAX_N = 12
DEFAULT_PRIME = 10007


@dataclass(frozen=True)
class CoverInstance:
    n: int
    r: int
    field: FieldKind = field(default_factory=lambda: FieldKind.prime(DEFAULT_PRIME))

    def __post_init__(self):
        if not 0 <= self.r <= self.n:
            raise ValueError(f"need 0 <= r <= n, got n={self.n}, r={self.r}")
        if not 0 <= self.n <= MAX_N:
            raise ValueError(f"oracle instances need n <= {MAX_N}, got {self.n}")

    def heavy(self) -> list[int]:
        return [v for v in _vertices(self.n) if weight(v) > self.r]

    def light(self) -> list[int]:
        return [v for v in _vertices(self.n) if weight(v) <= self.r]

    def as_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "field": str(self.field)}


def _vertices(n: int) -> list[int]:
    return sorted(range(1 << n), key=lambda m: (weight(m), m))


def _incidence(vertices: list[int], monomials) -> list[list[int]]:
    """Row v, column S: 1 iff S is a subset of v (monomial S is 1 at vertex v)."""
    return [[1 if s & v == s else 0 for s in monomials] for v in vertices]


class _Arith:
    """Vector arithmetic on raw field values: int64 residues or Fraction objects."""

    def __init__(self, fld: FieldKind):
        self.field = fld
        self.p = fld.p

    def nullspace(self, rows: list[list[int]], ncols: int) -> np.ndarray:
        if self.p is not None:
            if not rows:
                return np.eye(ncols, dtype=np.int64)
            return linalg.nullspace_mod_p(rows, self.p)
        basis = linalg.nullspace_rational(rows, ncols) if rows else [
            [Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
        return np.array(basis, dtype=object).reshape(len(basis), ncols)

    def rank(self, rows: list[list[int]], ncols: int) -> int:
        if not rows:
            return 0
        if self.p is not None:
            return linalg.rank_mod_p(rows, self.p)
        return linalg.rank_rational(rows, ncols)

    def solve(self, a: list[list[int]], b: list[int]):
        if self.p is not None:
            return linalg.solve_mod_p(a, b, self.p)
        return linalg.solve_rational(a, b)

    def scalar(self, x):
        return Fp(int(x), self.p) if self.p is not None else Fraction(x)


def vanishing_nullspace_matrix(inst: CoverInstance, d: int) -> tuple[tuple[int, ...], np.ndarray]:
    """Monomials of degree <= d and a nullspace basis over them, one row per vector."""
    if not 0 <= d <= inst.n:
        raise ValueError(f"need 0 <= d <= n, got d={d}")
    monos = enumerate_up_to_rank(inst.n, d).masks
    ar = _Arith(inst.field)
    return monos, ar.nullspace(_incidence(inst.heavy(), monos), len(monos))


def vanishing_nullspace(inst: CoverInstance, d: int) -> list[MultilinearPoly]:
    """Basis of multilinear polynomials of degree <= d vanishing on weight > r."""
    monos, basis = vanishing_nullspace_matrix(inst, d)
    ar = _Arith(inst.field)
    return [_to_poly(inst, monos, vec, ar) for vec in basis]


def sample_vanishing(inst: CoverInstance, count: int, rng, d: int | None = None) -> list[MultilinearPoly]:
    """Random elements of the degree-<= d vanishing space (d = n by default).

    Coordinates are uniform residues over F_p, or integers in [-9, 9] over Q.
    """
    d = inst.n if d is None else d
    monos, basis = vanishing_nullspace_matrix(inst, d)
    ar = _Arith(inst.field)
    out = []
    for _ in range(count):
        if inst.field.p is not None:
            coords = np.array([rng.randrange(inst.field.p) for _ in range(len(basis))], dtype=np.int64)
            vec = (coords @ basis) % inst.field.p if len(basis) else np.zeros(len(monos), dtype=np.int64)
        else:
            coords = np.array([Fraction(rng.randint(-9, 9)) for _ in range(len(basis))], dtype=object)
            vec = coords @ basis if len(basis) else [0] * len(monos)
        out.append(_to_poly(inst, monos, vec, ar))
    return out


def _to_poly(inst, monos, vec, ar) -> MultilinearPoly:
    return MultilinearPoly(inst.n, inst.field, {s: ar.scalar(c) for s, c in zip(monos, vec) if c != 0})


class Blocked(Exception):
    """No combination of the basis is nonzero at ``vertex``."""

    def __init__(self, vertex: int):
        super().__init__(f"every basis element vanishes at {format_mask(vertex)}")
        self.vertex = vertex


def witness_from_nullspace(basis: list[MultilinearPoly], light: list[int]) -> MultilinearPoly:
    """Combination of ``basis`` that is nonzero at every vertex in ``light``.

    Vertices are secured in order. When the running candidate g vanishes at
    the next vertex v, the first basis element h with h(v) != 0 is added as
    g + k*h for the least k = 1, 2, ... that keeps every secured vertex
    nonzero. Raises :class:`Blocked` when no basis element is nonzero at v.
    """
    if not basis:
        if light:
            raise Blocked(light[0])
        raise ValueError("empty basis and no vertices: nothing to build from")
    fld = basis[0].field
    values = [[evaluate(h, v) for v in light] for h in basis]
    g = MultilinearPoly(basis[0].n, fld, {})
    gv = [fld.zero] * len(light)
    for idx, v in enumerate(light):
        if gv[idx] != 0:
            continue
        pick = next((j for j, hv in enumerate(values) if hv[idx] != 0), None)
        if pick is None:
            raise Blocked(v)
        hv = values[pick]
        k = 1
        while True:
            lam = fld.element(k)
            if lam == 0:
                raise ValueError(f"field {fld} too small to secure {idx + 1} vertices")
            trial = [gv[i] + lam * hv[i] for i in range(idx + 1)]
            if all(x != 0 for x in trial):
                break
            k += 1
        g = g + basis[pick].scale(lam)
        gv = [gv[i] + lam * hv[i] for i in range(len(light))]
    return g


@dataclass
class DegreeCertificate:
    instance: CoverInstance
    d_min: int
    witness: MultilinearPoly
    # degree -> (blocking vertex, {heavy vertex: coefficient})
    blockers: dict[int, tuple[int, dict]]
    nullspace_dims: dict[int, int]

    def as_dict(self) -> dict:
        return {
            "d_min": self.d_min,
            "witness_terms": len(self.witness.coeffs),
            "witness_degree": self.witness.degree,
            "blockers": {
                str(d): {"vertex": format_mask(v),
                         "combination": {format_mask(u): c for u, c in sorted(comb.items())}}
                for d, (v, comb) in sorted(self.blockers.items())
            },
            "nullspace_dims": {str(d): k for d, k in sorted(self.nullspace_dims.items())},
        }


def _blocker_combination(inst: CoverInstance, d: int, v: int, ar: _Arith) -> dict:
    """Coefficients y with sum_u y_u [S subset u] = [S subset v] for all |S| <= d."""
    monos = enumerate_up_to_rank(inst.n, d).masks
    heavy = inst.heavy()
    cols = _incidence(heavy, monos)
    # transpose: one equation per monomial, one unknown per heavy vertex
    a = [[cols[j][i] for j in range(len(heavy))] for i in range(len(monos))]
    b = [1 if s & v == s else 0 for s in monos]
    if not heavy:
        return None
    y = ar.solve(a, b)
    if y is None:
        return None
    return {u: ar.scalar(c) for u, c in zip(heavy, y) if c != 0}


def check_blocker(inst: CoverInstance, d: int, v: int, comb: dict) -> bool:
    """Verify that the combination of heavy-vertex functionals equals the
    evaluation functional at v on every monomial of degree <= d."""
    fld = inst.field
    for s in enumerate_up_to_rank(inst.n, d).masks:
        lhs = fld.zero
        for u, c in comb.items():
            if weight(u) <= inst.r:
                return False
            if s & u == s:
                lhs = lhs + c
        if lhs != (1 if s & v == s else 0):
            return False
    return True


def check_witness(inst: CoverInstance, f: MultilinearPoly) -> int | None:
    """First vertex where f breaks the zero/nonzero pattern, or None."""
    for v in _vertices(inst.n):
        val = evaluate(f, v)
        if (val == 0) != (weight(v) > inst.r):
            return v
    return None


def min_cover_degree(inst: CoverInstance) -> DegreeCertificate:
    light = inst.light()
    if inst.field.is_prime and inst.field.p <= len(light):
        raise ValueError(
            f"field F_{inst.field.p} too small: need p > {len(light)} (number of vertices of weight <= {inst.r})")
    ar = _Arith(inst.field)
    blockers: dict[int, tuple[int, dict]] = {}
    dims: dict[int, int] = {}
    for d in range(inst.n + 1):
        basis = vanishing_nullspace(inst, d)
        dims[d] = len(basis)
        try:
            f = witness_from_nullspace(basis, light)
        except Blocked as exc:
            comb = _blocker_combination(inst, d, exc.vertex, ar)
            if comb is None:
                raise AssertionError(
                    f"blocked vertex {format_mask(exc.vertex)} has no heavy-vertex combination at d={d}")
            blockers[d] = (exc.vertex, comb)
            continue
        return DegreeCertificate(inst, d, f, blockers, dims)
    raise AssertionError(f"no cover found up to degree n for {inst}")


EXHAUSTIVE_LIMIT = 200_000


def exhaustive_min_degree(inst: CoverInstance, limit: int = EXHAUSTIVE_LIMIT) -> tuple[int, int]:
    """Minimal cover degree over a small prime field by trying every value table.

    A cover is zero on the heavy vertices and takes one of the p - 1 nonzero
    values on each light vertex; its degree is read off the Moebius transform.
    Returns (d_min, an optimal table's index in the enumeration). Used where
    the nullspace scan needs p > #light and the field is smaller than that.
    """
    p = inst.field.p
    if p is None:
        raise ValueError("exhaustive search needs a prime field")
    light = inst.light()
    if (p - 1) ** len(light) > limit:
        raise ValueError(f"{(p - 1) ** len(light)} value tables exceed the search limit {limit}")
    n = inst.n
    weights = [weight(m) for m in range(1 << n)]
    best, best_idx = None, -1
    for idx, vals in enumerate(itertools.product(range(1, p), repeat=len(light))):
        tab = [0] * (1 << n)
        for v, x in zip(light, vals):
            tab[v] = x
        transform_ints(tab, n, inverse=True, p=p)
        d = max(weights[m] for m, c in enumerate(tab) if c)
        if best is None or d < best:
            best, best_idx = d, idx
    return best, best_idx


def verify_certificate(cert: DegreeCertificate) -> list[str]:
    """Independent re-checks; returns a list of problems (empty when valid)."""
    inst = cert.instance
    problems = []
    bad = check_witness(inst, cert.witness)
    if bad is not None:
        problems.append(f"witness breaks the pattern at {format_mask(bad)}")
    if cert.witness.degree > cert.d_min:
        problems.append(f"witness degree {cert.witness.degree} exceeds d_min={cert.d_min}")
    for d in range(cert.d_min):
        if d not in cert.blockers:
            problems.append(f"no blocker for d={d}")
            continue
        v, comb = cert.blockers[d]
        if weight(v) > inst.r or not check_blocker(inst, d, v, comb):
            problems.append(f"blocker at d={d} does not verify")
    return problems


def blocker_kills_basis(inst: CoverInstance, d: int, v: int) -> bool:
    return all(evaluate(h, v) == 0 for h in vanishing_nullspace(inst, d))


def nullspace_dimension_check(inst: CoverInstance, d: int) -> tuple[int, int, int, int]:
    """(basis size, #monomials, rank by rows, rank by columns)."""
    monos = enumerate_up_to_rank(inst.n, d).masks
    rows = _incidence(inst.heavy(), monos)
    ar = _Arith(inst.field)
    by_rows = ar.rank(rows, len(monos))
    transposed = [list(col) for col in zip(*rows)] if rows else []
    by_cols = ar.rank(transposed, len(rows))
    return len(vanishing_nullspace(inst, d)), len(monos), by_rows, by_cols


def verify_degree_bound(n_max: int, fld: FieldKind | None = None, n_min: int = 1) -> Report:
    """d_min = n - r with verified witnesses and blockers for all n_min <= n <= n_max."""
    if n_max > MAX_N:
        raise ValueError(f"n_max must be <= {MAX_N}")
    fld = fld or FieldKind.prime(DEFAULT_PRIME)
    rep = Report("verify-degree-bound", {"n_min": n_min, "n_max": n_max, "field": str(fld)})
    for n in range(n_min, n_max + 1):
        for r in range(n + 1):
            inst = CoverInstance(n, r, fld)
            cert = min_cover_degree(inst)
            problems = verify_certificate(cert)
            star = check_star(cert.witness, r - 1) if r >= 1 else None
            if star is not None and not star.passed:
                problems.append("witness has a coefficient on a set of size > n - r")
            ext = construct_extremal(n, r, fld) if (fld.p is None or fld.p > n) else None
            if ext is not None:
                if ext.degree != n - r or any((val == 0) != (w > r) for w, val in enumerate(ext.values)):
                    problems.append("extremal product does not give a degree n - r cover")
            rep.add(cert.d_min == n - r and not problems, n=n, r=r, expected=n - r, got=cert.d_min,
                    blockers=len(cert.blockers), problems=problems)
    return rep.stop_clock()
