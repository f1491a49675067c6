from fractions import Fraction

import pytest

from tightdesign.beta0 import ThresholdInputs, compute_beta0, lambda_telescoping_identity, t_star_enclosure

PUBLISHED = {4: "19.35", 5: "33.76", 6: "156.96", 7: "86.55", 8: "106.77", 9: "146.37"}


@pytest.mark.parametrize("s", sorted(PUBLISHED))
def test_paper_mode_thresholds(s):
    rep = compute_beta0(s, ThresholdInputs.paper(s))
    assert abs(rep.beta0 - Fraction(PUBLISHED[s])) <= Fraction(1, 100)


def test_s6_side_conditions():
    rep = compute_beta0(6, ThresholdInputs.paper(6))
    flags = [v for v in rep.extras.values() if isinstance(v, bool)]
    assert flags and all(flags)


def test_t_star():
    t = t_star_enclosure()
    want = 2 / (1 - (3 / 8) ** 0.25)
    assert float(t.lo) <= want + 1e-12 and want - 1e-12 <= float(t.hi)
    assert abs(t.mid - Fraction("9.1971905725")) < Fraction(1, 10**10)


def test_s4_extras():
    rep = compute_beta0(4, ThresholdInputs.paper(4))
    assert rep.extras["t_star_rounds_to_9.1971905725"]
    assert rep.extras["sqrt_8_3_rounds_to_1.63299"]


@pytest.mark.parametrize("s", range(4, 10))
def test_telescoping_identity(s):
    assert all(lambda_telescoping_identity(s, i) for i in range(2, s // 2 + 1))


def test_ratio_definition():
    inp = ThresholdInputs.paper(5)
    assert inp.ratio(1, 2) == inp.C[1] * inp.D[2] / (inp.C[2] * inp.D[1])
