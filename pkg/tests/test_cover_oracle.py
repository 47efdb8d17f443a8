import random

import pytest

from cubecover import cover_oracle
from cubecover.cover_oracle import (
    Blocked,
    CoverInstance,
    check_blocker,
    check_witness,
    min_cover_degree,
    vanishing_nullspace,
    verify_certificate,
    witness_from_nullspace,
)
from cubecover.cube_poly import MultilinearPoly, evaluate
from cubecover.lattice import weight
from cubecover.scalar import FieldKind

Q = FieldKind.rational()
F = FieldKind.prime(10007)


def test_heavy_and_light():
    inst = CoverInstance(3, 1)
    assert inst.light() == [0, 1, 2, 4]
    assert inst.heavy() == [3, 5, 6, 7]


def test_instance_bounds():
    with pytest.raises(ValueError):
        CoverInstance(3, 4)
    with pytest.raises(ValueError):
        CoverInstance(13, 1)


def test_nullspace_examples():
    # affine functions vanishing on the four heavy vertices of {0,1}^3 with r = 1
    assert vanishing_nullspace(CoverInstance(3, 1), 1) == []
    # degree 2: 7 monomials, 4 independent heavy-vertex constraints
    basis = vanishing_nullspace(CoverInstance(3, 1), 2)
    assert len(basis) == 3
    for h in basis:
        assert all(evaluate(h, v) == 0 for v in CoverInstance(3, 1).heavy())


@pytest.mark.parametrize("n,r,d", [(3, 1, 2), (4, 1, 3), (4, 2, 2), (5, 2, 3), (6, 3, 2)])
def test_nullspace_dimension_two_ways(n, r, d):
    size, monos, by_rows, by_cols = cover_oracle.nullspace_dimension_check(CoverInstance(n, r), d)
    assert by_rows == by_cols
    assert size == monos - by_rows


@pytest.mark.parametrize("n,r,want", [(1, 0, 1), (2, 0, 2), (2, 2, 0), (3, 1, 2), (8, 3, 5)])
def test_min_cover_degree_examples(n, r, want):
    cert = min_cover_degree(CoverInstance(n, r))
    assert cert.d_min == want
    assert verify_certificate(cert) == []
    assert set(cert.blockers) == set(range(want))


def test_n1_r0_witness_is_multiple_of_one_minus_x():
    cert = min_cover_degree(CoverInstance(1, 0))
    w = cert.witness
    assert w.degree == 1
    assert w.coefficient(0) == -w.coefficient(1) != 0


@pytest.mark.parametrize("n", range(1, 7))
def test_min_cover_degree_rational(n):
    for r in range(n + 1):
        cert = min_cover_degree(CoverInstance(n, r, Q))
        assert cert.d_min == n - r
        assert verify_certificate(cert) == []


def test_small_field_rejected():
    with pytest.raises(ValueError):
        min_cover_degree(CoverInstance(4, 2, FieldKind.prime(7)))


def test_blocker_certificates_kill_the_space():
    cert = min_cover_degree(CoverInstance(5, 2))
    for d, (v, comb) in cert.blockers.items():
        assert weight(v) <= 2
        assert all(weight(u) > 2 for u in comb)
        assert cover_oracle.blocker_kills_basis(cert.instance, d, v)


def test_tampered_certificates_rejected():
    cert = min_cover_degree(CoverInstance(4, 1))
    d, (v, comb) = next(iter(cert.blockers.items()))
    u = next(iter(comb))
    broken = dict(comb)
    broken[u] = broken[u] + 1
    assert not check_blocker(cert.instance, d, v, broken)
    cert.blockers[d] = (v, broken)
    assert verify_certificate(cert)
    bad_witness = cert.witness + MultilinearPoly.constant(4, F, 1)
    assert check_witness(cert.instance, bad_witness) is not None


def test_witness_from_nullspace_examples():
    x = MultilinearPoly(1, Q, {1: 1})
    assert evaluate(witness_from_nullspace([x], [1]), 1) != 0
    with pytest.raises(Blocked) as exc:
        witness_from_nullspace([x], [0, 1])
    assert exc.value.vertex == 0


def test_witness_needs_scaling():
    # h1 = 1 - x, h2 = x; h1 alone misses vertex 1, adding h2 must keep vertex 0
    h1 = MultilinearPoly(1, F, {0: 1, 1: -1})
    h2 = MultilinearPoly(1, F, {1: 1})
    g = witness_from_nullspace([h1, h2], [0, 1])
    assert evaluate(g, 0) != 0 and evaluate(g, 1) != 0


def test_sample_vanishing():
    inst = CoverInstance(6, 2)
    polys = cover_oracle.sample_vanishing(inst, 30, random.Random(1))
    assert len(polys) == 30
    assert any(not f.is_zero() for f in polys)
    for f in polys:
        assert all(evaluate(f, v) == 0 for v in inst.heavy())


def test_verify_degree_bound_small():
    rep = cover_oracle.verify_degree_bound(5)
    assert rep.passed, rep.failures
    assert cover_oracle.verify_degree_bound(4, Q).passed


def test_exhaustive_agrees_with_certificate_search():
    for p in (3, 5, 7):
        fld = FieldKind.prime(p)
        for n in range(1, 5):
            for r in range(n + 1):
                inst = CoverInstance(n, r, fld)
                if p <= len(inst.light()) or (p - 1) ** len(inst.light()) > 20000:
                    continue
                assert cover_oracle.exhaustive_min_degree(inst)[0] == min_cover_degree(inst).d_min == n - r


def test_small_characteristic_measurements():
    f2, f3 = FieldKind.prime(2), FieldKind.prime(3)
    # over F_2 a cover is the indicator of the light vertices, which can need
    # more than n - r
    assert cover_oracle.exhaustive_min_degree(CoverInstance(2, 1, f2))[0] == 2
    assert cover_oracle.exhaustive_min_degree(CoverInstance(3, 2, f3))[0] == 2
    for n in range(1, 6):
        for r in range(n + 1):
            d, _ = cover_oracle.exhaustive_min_degree(CoverInstance(n, r, f2))
            assert d >= n - r


def test_exhaustive_limits():
    with pytest.raises(ValueError):
        cover_oracle.exhaustive_min_degree(CoverInstance(3, 1, Q))
    with pytest.raises(ValueError):
        cover_oracle.exhaustive_min_degree(CoverInstance(6, 3, FieldKind.prime(5)))
