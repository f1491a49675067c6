from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tightdesign.exactmath import (
    NotSquareFreeError,
    RatFun,
    RatInterval,
    SymbolicPoly,
    UniPoly,
    count_real_roots,
    integer_roots_in,
    interval_eval,
    isolate_real_roots,
    sqrt_interval,
    square_free_part,
)

small = st.fractions(min_value=-50, max_value=50, max_denominator=40)
polys = st.lists(st.integers(-20, 20), min_size=1, max_size=6).map(UniPoly)


def interval():
    return st.tuples(small, small).map(lambda p: RatInterval(min(p), max(p)))


@given(st.lists(small, min_size=1, max_size=6, unique=True))
@settings(max_examples=60, deadline=None)
def test_isolation_finds_every_planted_root(roots):
    p = UniPoly.from_roots(roots)
    found = isolate_real_roots(p, Fraction(1, 10**6))
    assert len(found) == len(roots)
    for r, want in zip(found, sorted(roots)):
        assert r.enclosure.contains(want)
        assert r.enclosure.width < Fraction(1, 10**6) or r.exact


def test_isolation_of_irrational_roots():
    # x^2 - 2
    roots = isolate_real_roots(UniPoly((-2, 0, 1)), Fraction(1, 10**20))
    assert len(roots) == 2
    lo, hi = roots[1].enclosure.lo, roots[1].enclosure.hi
    assert lo * lo < 2 < hi * hi


def test_isolation_rejects_repeated_factor():
    with pytest.raises(NotSquareFreeError):
        isolate_real_roots(UniPoly.from_roots([1, 1, 2]))
    sf = square_free_part(UniPoly.from_roots([1, 1, 2]))
    assert sf.degree == 2


def test_sturm_count_and_integer_roots():
    p = UniPoly.from_roots([-3, 0, 5, Fraction(1, 2)])
    assert count_real_roots(p) == 4
    assert count_real_roots(p, Fraction(-1), Fraction(6)) == 3
    assert integer_roots_in(p, -10, 10) == [-3, 0, 5]


@given(interval(), interval(), small, small)
@settings(max_examples=200, deadline=None)
def test_interval_operations_are_sound(a, b, s, t):
    x = a.lo + (a.hi - a.lo) * ((s + 50) / 100)
    y = b.lo + (b.hi - b.lo) * ((t + 50) / 100)
    assert (a + b).contains(x + y)
    assert (a - b).contains(x - y)
    assert (a * b).contains(x * y)
    assert (a**3).contains(x**3)
    assert abs(a).contains(abs(x))
    if not b.contains(0):
        assert (a / b).contains(x / y)


@given(polys, interval())
@settings(max_examples=100, deadline=None)
def test_interval_eval_encloses_values(p, box):
    for x in (box.lo, box.hi, box.mid):
        assert interval_eval(p, box).contains(p(x))


@given(polys, polys, polys)
@settings(max_examples=100, deadline=None)
def test_polynomial_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    if not q.is_zero():
        quo, rem = p.divmod(q)
        assert quo * q + rem == p


@given(st.fractions(min_value=0, max_value=10**6, max_denominator=1000))
@settings(max_examples=100, deadline=None)
def test_sqrt_interval_contains_root(x):
    iv = sqrt_interval(x)
    assert iv.lo >= 0
    assert iv.lo**2 <= x <= iv.hi**2


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=4), st.integers(0, 2), st.integers(0, 2),
       st.fractions(min_value=2, max_value=40, max_denominator=7))
@settings(max_examples=100, deadline=None)
def test_ratfun_arithmetic_matches_evaluation(num, a, b, t):
    f = RatFun(num, 3, a, b)
    g = RatFun([1, 2], 1, 1, 0)
    assert (f + g)(t) == f(t) + g(t)
    assert (f * g)(t) == f(t) * g(t)
    assert (f - f).is_zero()


def test_symbolic_ring_laws_by_evaluation():
    gens = ("beta", "r")
    b, r = SymbolicPoly.gen("beta", gens), SymbolicPoly.gen("r", gens)
    t = SymbolicPoly.from_ratfun(RatFun.t(), gens)
    p = (b + r * t) ** 3 - b * b * (t - 1)
    q = r * r + 2 * b
    vals = {"beta": Fraction(3, 2), "r": Fraction(-2, 5)}
    for tv in (Fraction(2), Fraction(7, 3), Fraction(11)):
        assert (p * q).evaluate(vals, tv) == p.evaluate(vals, tv) * q.evaluate(vals, tv)
        assert (p + q).evaluate(vals, tv) == p.evaluate(vals, tv) + q.evaluate(vals, tv)
    assert (p - p).is_zero()
