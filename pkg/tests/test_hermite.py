from fractions import Fraction

import pytest

from tightdesign.exactmath import UniPoly, sqrt_interval
from tightdesign.hermite import (
    EstimateFailure,
    build_table,
    compare_with_table,
    derivative_identity_check,
    hermite,
    interlacing_check,
    verify_xi_estimates,
)


def test_small_hermite_polynomials():
    assert hermite(0) == UniPoly((1,))
    assert hermite(1) == UniPoly((0, 1))
    assert hermite(6) == UniPoly((-15, 0, 45, 0, -15, 0, 1))
    assert hermite(8).coeffs[6] == -28


def test_printed_s8_row_is_reported_not_trusted():
    rep = compare_with_table(8)
    assert not rep.poly_matches
    assert rep.printed[6] == -21 and rep.computed[6] == -28
    assert rep.ok  # zeros and D bounds still agree


@pytest.mark.parametrize("s", range(1, 10))
def test_table_rows_agree(s):
    assert compare_with_table(s).ok


def test_s5_outer_zero_and_bound():
    tb = build_table(5)
    # xi_2^2 = 5 + sqrt(10)
    root10 = sqrt_interval(Fraction(10), Fraction(1, 10**40))
    assert not (tb.xi_sq(2).hi < 5 + root10.lo or tb.xi_sq(2).lo > 5 + root10.hi)
    assert tb.d_bounds[2] >= Fraction("20.64")


def test_s6_zero_decimal():
    enc = build_table(6).xi(1)
    assert abs(enc.mid - Fraction("0.61670659019")) < Fraction(1, 10**11)
    assert enc.width <= Fraction(1, 10**11)


def test_s3_layout():
    tb = build_table(3)
    assert tb.xi(0).lo == tb.xi(0).hi == 0
    assert tb.d_bounds[0] == 1
    assert tb.xi_sq(1).contains(3)


@pytest.mark.parametrize("s", range(1, 10))
def test_symmetry_interlacing_and_derivative(s):
    tb = build_table(s)
    for i in tb.positive_indices():
        if i:
            assert tb.xi(-i) == -tb.xi(i)
            assert tb.d_bounds[-i] == tb.d_bounds[i]
        assert tb.d_bounds[i] > 0
    assert interlacing_check(s)
    assert derivative_identity_check(s)


def test_estimates():
    assert len(verify_xi_estimates(6)) == 3
    for s in (4, 5, 7, 8, 9):
        assert verify_xi_estimates(s)
    with pytest.raises(ValueError):
        verify_xi_estimates(3)


def test_estimate_failure_is_hard(monkeypatch):
    import tightdesign.hermite as h

    tb = build_table(5)
    fake = h.HermiteTable(5, tb.poly, dict(tb.zeros), tb.d_enclosures, tb.d_bounds)
    from tightdesign.exactmath import CertifiedRoot, RatInterval

    fake.zeros[1] = CertifiedRoot(tb.poly, RatInterval(Fraction(2), Fraction(3)), 1)
    with pytest.raises(EstimateFailure):
        verify_xi_estimates(5, fake)
