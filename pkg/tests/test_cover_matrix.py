import io
import random

import numpy as np
import pytest

from cubecover import cover_matrix, linalg
from cubecover.cover_matrix import RegimeError, build, entry, verify_high_regime, verify_involution
from cubecover.lattice import complement, from_members, weight
from cubecover.scalar import binomial


def test_build_smallest():
    assert build(1, 0).entries.tolist() == [[-1]]


def test_build_n2_r1():
    # high regime: the singleton rows are unit rows at the complement
    assert build(2, 1).entries.tolist() == [[-1, -1, -1], [0, 0, 1], [0, 1, 0]]


def test_build_n4_r1_first_row():
    # formula row for A = {}: (-1)^3 C(3,1) then (-1)^3 C(2,0) per singleton
    m = build(4, 1)
    assert m.entries[0].tolist() == [-3, -1, -1, -1, -1]
    # the square of that row against column {} is 9 - 4*2 = 1
    assert int((m.entries @ m.entries)[0, 0]) == 1


def test_entry_examples():
    assert entry(4, 1, 0, 0) == -3
    assert entry(4, 1, from_members([1]), from_members([1])) == 0  # not disjoint
    assert entry(4, 1, from_members([1]), from_members([2])) == 1
    assert entry(2, 1, from_members([1]), from_members([2])) == 1
    assert entry(2, 1, from_members([1]), from_members([1])) == 0


def test_entry_rejects_oversized_sets():
    with pytest.raises(ValueError):
        entry(4, 1, from_members([1, 2]), 0)
    with pytest.raises(ValueError):
        entry(3, 1, from_members([4]), 0)


@pytest.mark.parametrize("n,r", [(n, r) for n in range(0, 8) for r in range(n + 1)])
def test_build_agrees_with_entry(n, r):
    m = build(n, r)
    for i, A in enumerate(m.order):
        for j, B in enumerate(m.order):
            assert m.entries[i, j] == entry(n, r, A, B)


@pytest.mark.parametrize("n,r", [(6, 2), (7, 3), (8, 5)])
def test_structure_property(n, r):
    m = build(n, r)
    for A in m.order:
        for B in m.order:
            e = m[A, B]
            if weight(A) >= n - r:
                assert e == (1 if B == complement(A, n) else 0)
            elif A & B:
                assert e == 0
            else:
                sign = (-1) ** (n - r - weight(A))
                assert e == sign * binomial(n - 1 - weight(A) - weight(B), r - weight(B))


def test_dim_and_order():
    m = build(5, 2)
    assert m.dim == 1 + 5 + 10
    assert m.order[0] == 0 and weight(m.order[-1]) == 2
    assert m.regime == cover_matrix.LOW and build(4, 2).regime == cover_matrix.HIGH


def test_entries_read_only():
    with pytest.raises(ValueError):
        build(3, 1).entries[0, 0] = 5


def test_dimension_guard():
    with pytest.raises(ValueError, match="dimension guard"):
        build(21, 1)
    with pytest.raises(ValueError, match="dimension guard"):
        build(16, 8)
    with pytest.raises(ValueError):
        build(3, 4)


def test_dump_format():
    out = io.StringIO()
    build(2, 1).dump(out)
    assert out.getvalue() == "n=2 r=1 dim=3\n-1 -1 -1\n0 0 1\n0 1 0\n"


@pytest.mark.parametrize("n,r", [(n, r) for n in range(1, 11) for r in range(n) if 2 * r < n])
def test_involution(n, r):
    rep = verify_involution(n, r)
    assert rep.passed, rep.failures


@pytest.mark.parametrize("n,r", [(n, r) for n in range(2, 9) for r in range(n + 1) if 2 * r >= n])
def test_high_regime(n, r):
    rep = verify_high_regime(n, r)
    assert rep.passed, rep.failures
    assert any(d["check"] == "full M*M=I (not asserted)" for d in rep.details)


def test_regime_errors():
    with pytest.raises(RegimeError):
        verify_involution(4, 2)
    with pytest.raises(RegimeError):
        verify_high_regime(5, 2)


def test_mutated_entry_fails_involution(monkeypatch):
    real = cover_matrix.entry_value

    def off_by_one(n, r, a, b):
        v = real(n, r, a, b)
        return v + 1 if (a, b) == (1, 2) else v

    monkeypatch.setattr(cover_matrix, "entry_value", off_by_one)
    rep = verify_involution(6, 2)
    assert not rep.passed
    bad = rep.failures[0]
    assert bad["mismatches"] > 0 and "A" in bad and "B" in bad


def test_square_is_exact_for_large_entries():
    m = build(12, 5)
    sq = cover_matrix.square(m)
    assert sq.dtype != np.float64
    assert np.array_equal(sq, np.eye(m.dim, dtype=sq.dtype))


@pytest.mark.parametrize("n,r", [(3, 1), (5, 2), (4, 2), (6, 4)])
def test_solve_homogeneous_only_zero(n, r):
    m = build(n, r)
    assert cover_matrix.solve_homogeneous(m) == []
    det = linalg.determinant(m.entries.tolist())
    assert det == linalg.bareiss_determinant(m.entries.tolist()) != 0


def test_nullspace_empty_iff_det_nonzero():
    rng = random.Random(5)
    for _ in range(60):
        k = rng.randint(1, 6)
        a = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(k)]
        if rng.random() < 0.4:
            a[-1] = [x + y for x, y in zip(a[0], a[1 % k])] if k > 1 else [0]
        ns = linalg.nullspace_rational(a, k)
        assert (ns == []) == (linalg.bareiss_determinant(a) != 0)
        for vec in ns:
            assert all(sum(x * y for x, y in zip(row, vec)) == 0 for row in a)
