"""The nine exit criteria, each returning a :class:`Report`.

Shared by ``cubecover selftest`` and ``tests/test_acceptance.py``. Every check
is exact; random inputs come from fixed seeds.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from . import cover_matrix, cover_oracle, cube_poly, lattice, wz_sums
from .parallel import pmap
from .report import Report
from .scalar import FieldKind

PRIME = 10007
SEED = 20240607


def _merge(command: str, params: dict, reports: list[Report]) -> Report:
    out = Report(command, params)
    for rep in reports:
        for d in rep.details:
            out.details.append({"source": rep.command, **d})
    return out.stop_clock()


def involution() -> Report:
    cases = [(n, r) for n in range(2, 11) for r in range(n) if 2 * r < n] + [(12, 5)]
    reps = pmap(lambda nr: cover_matrix.verify_involution(*nr), cases)
    return _merge("involution", {"n": "2..10, r < n/2; (12, 5)"}, reps)


def high_regime() -> Report:
    cases = [(n, r) for n in range(2, 11) for r in range(n + 1) if 2 * r >= n]
    reps = pmap(lambda nr: cover_matrix.verify_high_regime(*nr), cases)
    return _merge("high-regime", {"n": "2..10, n/2 <= r <= n"}, reps)


def closed_sums() -> Report:
    return wz_sums.verify_sums(14)


def recurrences() -> Report:
    return wz_sums.verify_recurrences(14)


def alternating_sum() -> Report:
    return wz_sums.verify_alt_sum(20)


def degree_bound() -> Report:
    return cover_oracle.verify_degree_bound(8, FieldKind.prime(PRIME))


def extremal() -> Report:
    rep = Report("extremal", {"n": "0..16", "fields": ["rational", f"fp:{PRIME}"]})
    for fld in (FieldKind.rational(), FieldKind.prime(PRIME)):
        for n in range(17):
            for r in range(n + 1):
                prof = cube_poly.construct_extremal(n, r, fld)
                sub = cube_poly.check_extremal(prof)
                bad = sub.failures[0] if sub.failures else None
                rep.add(sub.passed and prof.degree == n - r, field=str(fld), n=n, r=r,
                        degree=prof.degree, **({"first_failure": bad} if bad else {}))
    return rep.stop_clock()


def _random_table(rng: random.Random, n: int, fld: FieldKind) -> lattice.LatticeTable:
    if fld.is_prime:
        vals = [rng.randrange(fld.p) for _ in range(1 << n)]
    else:
        vals = [f"{rng.randint(-50, 50)}/{rng.randint(1, 12)}" for _ in range(1 << n)]
    return lattice.LatticeTable.from_values(n, fld, vals)


def transforms() -> Report:
    rng = random.Random(SEED)
    rep = Report("transforms", {"naive_n": "0..10", "roundtrip_n": "0..16", "tables_per_n": 20})
    fields = (FieldKind.rational(), FieldKind.prime(PRIME))
    for n in range(11):
        for fld in fields:
            ok = True
            for _ in range(20):
                t = _random_table(rng, n, fld)
                if (lattice.zeta_transform(t) != lattice.naive_zeta_transform(t)
                        or lattice.mobius_transform(t) != lattice.naive_mobius_transform(t)):
                    ok = False
                    break
            rep.add(ok, check="fast == naive", n=n, field=str(fld), tables=20)
    for n in range(17):
        for fld in fields:
            count = 20 if n <= 10 else 2
            ok = True
            for _ in range(count):
                t = _random_table(rng, n, fld)
                if (lattice.mobius_transform(lattice.zeta_transform(t)) != t
                        or lattice.zeta_transform(lattice.mobius_transform(t)) != t):
                    ok = False
                    break
            rep.add(ok, check="mobius o zeta = id", n=n, field=str(fld), tables=count)
    return rep.stop_clock()


def relation_samples(samples: int = 100) -> Report:
    fld = FieldKind.prime(PRIME)
    cases = [(n, r) for n in range(2, 11) for r in range(1, n)]

    def run(nr):
        n, r = nr
        rng = random.Random(SEED * 1000 + 37 * n + r)
        polys = cover_oracle.sample_vanishing(cover_oracle.CoverInstance(n, r, fld), samples, rng)
        bad = None
        for f in polys:
            sub = cube_poly.check_double_star_relation(f, r)
            if not sub.passed:
                bad = sub.failures[0]
                break
        return {"n": n, "r": r, "samples": len(polys), "bad": bad}

    rep = Report("relation", {"n": "2..10", "r": "1..n-1", "samples": samples, "field": str(fld)})
    for res in pmap(run, cases):
        bad = res.pop("bad")
        rep.add(bad is None and res["samples"] >= samples, **res, **({"first_failure": bad} if bad else {}))
    return rep.stop_clock()


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    run: Callable[[], Report]
    budget_s: int


CRITERIA = [
    Criterion(1, "involution M*M = I (2 <= n <= 10, r < n/2; n=12, r=5)", involution, 60),
    Criterion(2, "high-regime block structure and det M != 0 (2 <= n <= 10)", high_regime, 60),
    Criterion(3, "S1 = 1 and S2 = 0 (2 <= n <= 14)", closed_sums, 30),
    Criterion(4, "recurrence residuals and induction replay (n <= 14)", recurrences, 30),
    Criterion(5, "alternating-sum closed form (s <= 20)", alternating_sum, 10),
    Criterion(6, "minimal cover degree n - r over F_10007 (n <= 8)", degree_bound, 120),
    Criterion(7, "extremal product vanishing pattern (n <= 16)", extremal, 10),
    Criterion(8, "fast vs naive transforms, round trips (n <= 16)", transforms, 30),
    Criterion(9, "linear relation on sampled vanishing polynomials (n <= 10)", relation_samples, 60),
]


def select(only: list[int] | None = None) -> list[Criterion]:
    if not only:
        return list(CRITERIA)
    known = {c.number for c in CRITERIA}
    unknown = sorted(set(only) - known)
    if unknown:
        raise ValueError(f"unknown criteria: {unknown}")
    return [c for c in CRITERIA if c.number in only]


def run_all(only: list[int] | None = None, echo: Callable[[str], None] | None = None) -> Report:
    """Run the selected criteria; one summary detail per criterion."""
    crits = select(only)
    out = Report("selftest", {"criteria": [c.number for c in crits]})
    for c in crits:
        rep = c.run()
        failure = rep.failures[0] if rep.failures else None
        out.add(rep.passed, criterion=c.number, name=c.name, checks=len(rep.details),
                **({"first_failure": failure} if failure else {}))
        if echo:
            echo(f"[{'PASS' if rep.passed else 'FAIL'}] {c.number}. {c.name} ({len(rep.details)} checks)")
    return out.stop_clock()
