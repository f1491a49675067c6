from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tightdesign.design import (
    DesignError,
    check_candidate,
    complement,
    derive_params,
    k_from,
    psi,
    psi_root_sum,
    residue_r,
    v_from,
)


def test_witt_design():
    a = check_candidate(2, 23, 7)
    assert a.passed
    assert a.intersection_numbers == [1, 3]
    assert a.lam == 1


def test_witt_complement():
    v, k = complement(2, 23, 7)
    b = check_candidate(2, v, k)
    assert (v, k) == (23, 16)
    assert b.passed and b.lam == 52


def test_no_other_small_nontrivial_tight_4_design():
    passing = [
        (v, k)
        for v in range(5, 31)
        for k in range(4, v - 2)  # k = v - 2 is the trivial design
        if check_candidate(2, v, k).passed
    ]
    assert passing == [(23, 7), (23, 16)]


def test_trivial_design_passes():
    assert check_candidate(2, 12, 10).passed


def test_lambda_formula_against_block_count():
    # lambda = b C(k,2s) / C(v,2s) with b = C(v,s)
    c = derive_params(2, 23, 7)
    assert c.lam == Fraction(comb(23, 2) * comb(7, 4), comb(23, 4))
    assert c.b == comb(23, 2)


def test_parameter_round_trip():
    c = derive_params(3, 40, 13)
    assert k_from(3, c.t, c.beta_sq) == 13
    assert v_from(3, c.t, c.beta_sq) == 40


def test_root_sum_matches_alpha_bar():
    for s, v, k in [(2, 23, 7), (3, 40, 13), (4, 100, 20)]:
        assert psi_root_sum(s, v, k) == s * derive_params(s, v, k).alpha_bar


def test_psi_roots_for_witt():
    p = psi(2, 23, 7).monic()
    assert p(1) == 0 and p(3) == 0


@pytest.mark.parametrize("s", range(1, 13))
def test_residue_formula_brute_force(s):
    for k in range(2 * s, 2 * s + 500):
        n = k - s
        assert residue_r(k, s) == (s * (n + 1) * n) % (2 * n + 1)


def test_failure_tags():
    assert "v-equals-2k" in check_candidate(3, 40, 20).failures
    assert "v-equals-2k-plus-1" in check_candidate(3, 41, 20).failures
    assert "lambda-not-integer" in check_candidate(5, 500, 37).failures


def test_validation():
    with pytest.raises(DesignError):
        check_candidate(3, 10, 9)
    with pytest.raises(DesignError):
        derive_params(3, 5, 2)


@given(st.integers(2, 5), st.integers(0, 40), st.integers(1, 60))
@settings(max_examples=80, deadline=None)
def test_stop_early_is_prefix(s, dk, dv):
    k = 2 * s + dk
    v = k + s + dv
    full = check_candidate(s, v, k)
    early = check_candidate(s, v, k, stop_early=True)
    assert early.failures == full.failures[: len(early.failures)]
    assert early.passed == full.passed
