from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tightdesign.exactmath import RatInterval, UniPoly
from tightdesign.hermite import build_table
from tightdesign.smith.constants import (
    beta_hat,
    coeff_suprema,
    derive_constants,
    lower_bound_holds,
    smith_radii,
    step_for,
    validate_paper_constants,
)
from tightdesign.smith.pipeline import build_pipeline, check_top_divisibility
from tightdesign.smith.suprema import certified_sup_bound, planted_form


@pytest.fixture(scope="module")
def pipe4():
    return build_pipeline(4)


def test_pipeline_shape(pipe4):
    assert len(pipe4.kappa) == 3 * 4 - 1
    assert len(pipe4.dropped) == 2


@pytest.mark.parametrize("s", [4, 5, 6])
def test_dropped_top_coefficients_divisible_by_hermite(s):
    assert check_top_divisibility(build_pipeline(s)) == [True, True]


def test_q_tilde_below_q(pipe4):
    assert lower_bound_holds(pipe4)


def test_planted_supremum():
    # (t-1)/t^2 peaks at t = 2 with value 1/4 on t >= 2
    form = planted_form([-1, 1], 2, 0)
    M, lower, _ = certified_sup_bound(form, Fraction(1, 1000))
    assert lower <= Fraction(1, 4) <= M
    assert M - Fraction(1, 4) <= Fraction(1, 1000)


def test_planted_supremum_at_infinity():
    # (-t^2 + 6t - 5)/t^2 decreases from 3/4 towards -1, so sup |f| = 1 (not attained)
    form = planted_form([-5, 6, -1], 2, 0)
    M, lower, _ = certified_sup_bound(form, Fraction(1, 100))
    assert lower <= 1 <= M <= Fraction(101, 100)


def test_step_grid():
    assert step_for(0, 10) == Fraction(1, 1000)
    assert step_for(3, 10) == 1
    assert step_for(5, None) == 1


def test_s4_constants_validate():
    v = validate_paper_constants(4)
    assert v.passed
    for row in v.rows:
        assert row.certified_sum <= row.C_paper


def test_sup_bounds_bracket_each_other():
    pipe = build_pipeline(4)
    tb = build_table(4)
    for sb in coeff_suprema(pipe, 1, tb, 10):
        assert sb.lower <= sb.M


def test_beta_hat():
    c = derive_constants(5, 1, [0, 0, 100, 1000], 10, Fraction(4))
    assert c.C == Fraction(2)
    assert beta_hat(5, 1, Fraction(1, 10), c) == 10
    assert beta_hat(5, 1, Fraction(1, 100), c) == 50
    with pytest.raises(ValueError):
        beta_hat(5, 1, Fraction(0), c)


def test_smith_radius_of_exact_roots_is_zero():
    P = UniPoly.from_roots([1, 2, 5])
    assert all(r.hi == 0 for r in smith_radii(P, [1, 2, 5]))


def test_smith_radius_rejects_bad_input():
    with pytest.raises(ValueError):
        smith_radii(UniPoly((1, 2)) * 2, [0])
    with pytest.raises(ValueError):
        smith_radii(UniPoly.from_roots([1, 2]), [1, 1])


@given(
    st.lists(st.integers(-30, 30), min_size=2, max_size=6, unique=True),
    st.lists(st.integers(-40, 40), min_size=6, max_size=6),
    st.lists(st.integers(-3, 3), min_size=6, max_size=6),
    st.integers(1, 4),
)
@settings(max_examples=500, deadline=None)
def test_smith_disks_contain_every_zero(centres, noise, shifts, scale):
    n = len(centres)
    P = UniPoly.from_roots([Fraction(c, 3) for c in centres]) + UniPoly([Fraction(x, 10**scale) for x in noise[:n]])
    pts = [Fraction(c, 3) + Fraction(d, 200) for c, d in zip(centres, shifts)]
    if len(set(pts)) < n:
        return
    radii = [float(r.hi) for r in smith_radii(P, pts)]
    for z in np.roots([float(c) for c in reversed(P.coeffs)]):
        tol = 1e-8 * (1 + abs(z))
        assert any(abs(z - float(p)) <= r + tol for p, r in zip(pts, radii))
