import pytest

from cubecover import wz_sums
from cubecover.wz_sums import (
    S1,
    S2,
    S1Params,
    S2Params,
    partial_alternating_sum,
    recurrence_residual,
    replay_induction,
    s1,
    s1_coefficients,
    s2,
    s2_coefficients,
)


def test_s1_examples():
    assert s1(S1Params(2, 0), 0) == 1
    assert s1(S1Params(5, 1), 2) == 1
    assert s1(S1Params(9, 4), 4) == 1


def test_s2_examples():
    assert s2(S2Params(3, 1, 0, 0), 1) == 0
    assert s2(S2Params(7, 2, 3, 1), 3) == 0


def test_param_validation():
    with pytest.raises(ValueError):
        S2Params(5, 2, 2, 2)
    with pytest.raises(ValueError):
        S2Params(3, 2, 2, 0)  # |A u B| = 4 > n
    with pytest.raises(ValueError):
        S1Params(3, 4)


# Values worked out by hand from the printed factorised forms.
@pytest.mark.parametrize("a,m,r,want", [
    (0, 3, 0, (-4, 0, 4)),
    (1, 5, 0, (0, -24, 24)),
    (0, 5, 1, (-18, None, 18)),
])
def test_s1_coefficients_by_hand(a, m, r, want):
    got = s1_coefficients(a, m, r)
    for g, w in zip(got, want):
        if w is not None:
            assert g == w


def test_s2_specialises_to_s1():
    for a in range(5):
        for m in range(a, 12):
            for r in range(6):
                assert s2_coefficients(a, a, m, a, r) == s1_coefficients(a, m, r)


@pytest.mark.parametrize("n", range(2, 13))
def test_sums_hold_on_every_tuple(n):
    for params, r in wz_sums.s1_tuples(n):
        assert s1(params, r) == 1
    for params, r in wz_sums.s2_tuples(n):
        assert s2(params, r) == 0


@pytest.mark.parametrize("n", range(5, 13))
def test_residuals_zero(n):
    for ident, tuples in ((S1, wz_sums.s1_tuples), (S2, wz_sums.s2_tuples)):
        for params, r in tuples(n):
            if params.valid_at(r + 2):
                assert recurrence_residual(ident, params, r) == 0


def test_leading_coefficient_nonzero_in_range():
    for n in range(2, 15):
        for ident, tuples in ((S1, wz_sums.s1_tuples), (S2, wz_sums.s2_tuples)):
            for params, r in tuples(n):
                if params.valid_at(r + 2):
                    assert wz_sums.CERTIFICATES[ident].coefficients(params, r)[2] != 0


def test_residual_range_guard_and_explore():
    p = S1Params(6, 2)
    with pytest.raises(ValueError):
        recurrence_residual(S1, p, 1)
    # below r = a the sum is not claimed to be 1, but the recurrence still holds
    assert recurrence_residual(S1, p, 0, explore=True) == 0


def test_corrupted_coefficient_is_caught(monkeypatch):
    real = wz_sums.s1_coefficients
    monkeypatch.setattr(wz_sums, "s1_coefficients", lambda a, m, r: tuple(c + (i == 1) for i, c in enumerate(real(a, m, r))))
    rep = wz_sums.verify_recurrences(9, n_min=9)
    assert not rep.passed


def test_replay_examples():
    rep = replay_induction(S1, 11, 0, r_max=5)
    assert rep.passed
    assert [d["step"] for d in rep.details] == ["base", "base"] + ["propagate"] * 4
    assert replay_induction(S2, 13, 2, 3, 1, r_max=6).passed


def test_replay_vacuous_and_bounds():
    rep = replay_induction(S1, 9, 4, r_max=3)
    assert rep.passed and rep.details[0]["step"] == "vacuous"
    with pytest.raises(ValueError):
        replay_induction(S1, 8, 0, r_max=4)


def test_alt_sum_examples():
    assert partial_alternating_sum(3, 3, 3) == (1, 1)
    assert partial_alternating_sum(4, 1, 4) == (0, 0)
    direct, closed = partial_alternating_sum(5, 1, 2)
    # (-1)^4 C(4,0) + (-1)^3 C(4,1) = -3 = (-1)^3 C(3,1)
    assert direct == closed == -3


def test_alt_sum_all():
    assert wz_sums.verify_alt_sum(20).passed


def test_verify_reports_pass():
    assert wz_sums.verify_sums(14).passed
    assert wz_sums.verify_recurrences(14).passed
