import io
import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cubecover import cover_oracle
from cubecover.cube_poly import (
    ZERO_DEGREE,
    MultilinearPoly,
    alpha_of,
    check_double_star_relation,
    check_extremal,
    check_star,
    construct_extremal,
    eval_table,
    evaluate,
    read_poly,
    relation_rhs,
    write_poly,
)
from cubecover.lattice import LatticeTable, from_members, mobius_transform, weight
from cubecover.scalar import FieldKind, FieldMismatch, Fp

Q = FieldKind.rational()
F5 = FieldKind.prime(5)
F = FieldKind.prime(10007)


def poly(n, coeffs, field=Q):
    return MultilinearPoly(n, field, coeffs)


def random_poly(rng, n, field, max_deg=None):
    max_deg = n if max_deg is None else max_deg
    coeffs = {}
    for m in range(1 << n):
        if weight(m) <= max_deg and rng.random() < 0.6:
            coeffs[m] = rng.randint(-9, 9)
    return poly(n, coeffs, field)


def test_evaluate_examples():
    assert evaluate(MultilinearPoly.constant(3, Q), 0b101) == 1
    x1x2 = poly(2, {0b11: 1})
    assert evaluate(x1x2, 0b11) == 1
    assert evaluate(x1x2, 0b01) == 0
    assert evaluate(poly(2, {0: 1, 1: 1, 2: 2, 3: 3}), 0b11) == 7


def test_evaluate_rejects_field_mismatch():
    with pytest.raises(FieldMismatch):
        evaluate(poly(1, {0: 1}), 0, field=F)


def test_eval_table_examples():
    assert eval_table(poly(1, {1: 1})).values == (0, 1)
    assert set(eval_table(MultilinearPoly.constant(3, Q, 4)).values) == {4}


@pytest.mark.parametrize("n", range(0, 11))
def test_eval_table_matches_pointwise(n):
    rng = random.Random(100 + n)
    f = random_poly(rng, n, F)
    tab = eval_table(f)
    assert all(tab[v] == evaluate(f, v) for v in range(1 << n))


def test_alpha_examples():
    a = alpha_of(poly(2, {0b11: 1}))
    assert a.values == (0, 0, 0, 1)
    c = alpha_of(MultilinearPoly.constant(3, Q, 7))
    assert c.values[0] == 7 and all(v == 0 for v in c.values[1:])


def test_alpha_is_coefficient_table_exhaustive_f5_n2():
    # every multilinear polynomial in 2 variables over F_5
    for coeffs in itertools.product(range(5), repeat=4):
        f = poly(2, dict(enumerate(coeffs)), F5)
        assert alpha_of(f) == f.coeff_table()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 16), st.randoms(use_true_random=False))
def test_alpha_is_coefficient_table_random(n, rnd):
    f = poly(n, {rnd.randrange(1 << n): rnd.randint(-5, 5) for _ in range(20)}, F)
    assert alpha_of(f) == f.coeff_table()


def test_alpha_recovers_sparse_n6_f5():
    rng = random.Random(6)
    for _ in range(50):
        f = random_poly(rng, 6, F5)
        assert alpha_of(f) == f.coeff_table()


def test_degree_sentinel():
    z = poly(3, {})
    assert z.degree == ZERO_DEGREE
    assert z.degree < 0 and z.degree != -1
    assert MultilinearPoly.constant(3, Q).degree == 0
    assert poly(3, {0b111: 0}).is_zero()


def test_check_star_examples():
    assert check_star(poly(3, {0b001: 1}), 1).passed
    rep = check_star(poly(3, {0b111: 1}), 1)
    assert not rep.passed
    assert rep.failures[0]["J"] == "{1,2,3}"


@pytest.mark.parametrize("n", range(1, 13))
def test_check_star_low_degree_passes_and_injection_fails(n):
    rng = random.Random(n)
    for r in range(n):
        f = random_poly(rng, n, F, max_deg=n - r - 1)
        assert check_star(f, r).passed
        target = rng.choice([m for m in range(1 << n) if weight(m) >= n - r])
        g = f + poly(n, {target: 1}, F)
        assert not check_star(g, r).passed


def hand_example():
    # f = 1 on weights 0 and 1, zero on weights 2 and 3 (n = 3)
    values = [1 if weight(v) <= 1 else 0 for v in range(8)]
    alpha = mobius_transform(LatticeTable.from_values(3, Q, values))
    return MultilinearPoly.from_table(alpha)


def test_relation_hand_example():
    f = hand_example()
    # inclusion-exclusion by hand: alpha_{} = 1, alpha_{i} = 0,
    # alpha_{ij} = 0 - 1 - 1 + 1 = -1, alpha_{123} = 0 - 0 + 3 - 1 = 2
    assert f.coeffs == {0: 1, 0b011: -1, 0b101: -1, 0b110: -1, 0b111: 2}
    assert check_double_star_relation(f, 1).passed
    alpha = alpha_of(f)
    assert relation_rhs(alpha, 1, 0b011) == -1
    assert relation_rhs(alpha, 1, 0b111) == 2


def test_relation_zero_poly():
    assert check_double_star_relation(poly(4, {}, F), 2).passed


def test_relation_precondition_reported_separately():
    rep = check_double_star_relation(MultilinearPoly.constant(3, Q), 1)
    assert not rep.passed and rep.failures[0]["check"] == "precondition"


def test_relation_detects_corruption():
    f = hand_example()
    bad = f + poly(3, {0b111: 1})
    # no longer vanishes at {1,2,3}: precondition, not relation
    assert check_double_star_relation(bad, 1).failures[0]["check"] == "precondition"


@pytest.mark.parametrize("n,r", [(n, r) for n in range(2, 9) for r in range(1, n)])
def test_relation_on_sampled_nullspace(n, r):
    rng = random.Random(1000 * n + r)
    for f in cover_oracle.sample_vanishing(cover_oracle.CoverInstance(n, r, F), 25, rng):
        assert check_double_star_relation(f, r).passed


def test_relation_over_rationals():
    rng = random.Random(3)
    for f in cover_oracle.sample_vanishing(cover_oracle.CoverInstance(5, 2, Q), 10, rng):
        assert check_double_star_relation(f, 2).passed


def test_extremal_examples():
    prof = construct_extremal(3, 1, Q)
    assert prof.values == (6, 2, 0, 0)
    assert prof.degree == 2
    flat = construct_extremal(5, 5, Q)
    assert flat.values == (1,) * 6 and flat.degree == 0
    big = construct_extremal(16, 3, F)
    assert all(v != 0 for v in big.values[:4]) and all(v == 0 for v in big.values[4:])


def test_extremal_rejects_small_characteristic():
    with pytest.raises(ValueError):
        construct_extremal(5, 1, FieldKind.prime(5))
    construct_extremal(4, 1, FieldKind.prime(5))


@pytest.mark.parametrize("field", [Q, F])
def test_extremal_pattern_all(field):
    for n in range(17):
        for r in range(n + 1):
            assert check_extremal(construct_extremal(n, r, field)).passed


def test_extremal_matches_expanded_product():
    # expand prod (x1+...+xn - s) multilinearly and evaluate at every vertex
    n, r = 4, 1
    f = MultilinearPoly.constant(n, Q)
    for s in range(r + 1, n + 1):
        lin = poly(n, {0: -s, **{1 << i: 1 for i in range(n)}})
        prod = {}
        for m1, c1 in f.coeffs.items():
            for m2, c2 in lin.coeffs.items():
                prod[m1 | m2] = prod.get(m1 | m2, 0) + c1 * c2
        f = poly(n, prod)
    prof = construct_extremal(n, r, Q)
    for v in range(1 << n):
        assert evaluate(f, v) == prof.values[weight(v)]
    assert f.degree == n - r


def test_poly_text_round_trip():
    src = """# comment line
n=4 field=rational
3/2 0   # constant
-1 b
2 3
"""
    f = read_poly(io.StringIO(src))
    assert f.n == 4 and f.field == Q
    assert f.coeffs == {0: Fraction(3, 2), 3: 2, 0xB: -1}
    out = io.StringIO()
    write_poly(f, out)
    assert read_poly(io.StringIO(out.getvalue())) == f


def test_poly_text_prime_field():
    f = read_poly(["n=2 field=fp:7", "1/2 3", "1 0x1"])
    assert f.coeffs == {1: Fp(1, 7), 3: Fp(4, 7)}


@pytest.mark.parametrize("text", ["", "n=2\n1 0", "n=2 field=rational\n1", "n=1 field=rational\n1 4"])
def test_poly_text_errors(text):
    with pytest.raises(ValueError):
        read_poly(io.StringIO(text))
