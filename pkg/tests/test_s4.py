import random
from fractions import Fraction

import pytest

from tightdesign import s4
from tightdesign.reference import SIEVE_CLASSES


@pytest.fixture(scope="module")
def f():
    return s4.derive_f()


def test_derived_polynomial_shape(f):
    t = f.int_terms()
    assert t[(0, 0)] == -3408102864
    assert t[(0, 11)] == 45
    assert t[(12, 0)] == 65536
    assert t[(12, 1)] == -16384
    assert f.degrees() == (12, 11)


def test_mismatch_is_a_hard_error(f):
    bad = s4.BivarPoly(dict(f.terms))
    bad.terms[(3, 3)] += 1
    with pytest.raises(s4.DerivationError, match="k\\^3 v\\^3"):
        s4.compare_with_literal(bad)


def test_p3_vanishes_on_special_lines():
    assert s4.p_coeffs(20, 41).p3 == 0
    assert s4.p_coeffs(20, 24).p3 == 0


@pytest.mark.parametrize("k,v", [(9, 30), (12, 100), (30, 200), (57, 1001)])
def test_closed_forms_match_shifted_psi(k, v):
    c = s4.p_coeffs(k, v)  # raises on disagreement
    F = s4.shifted_psi4(k, v)
    assert F.coeffs[4] == 1 and F.coeffs[3] == 0
    assert F.coeffs[2] == c.p2


def test_domain():
    with pytest.raises(ValueError):
        s4.p_coeffs(8, 30)


def test_quarter_integer_roots_satisfy_identity():
    rng = random.Random(3)
    for _ in range(50):
        r1 = Fraction(rng.randint(-40, 40), 4)
        r2 = Fraction(rng.randint(-40, 40), 4)
        roots = [r1 - Fraction(1, 4), r2 + Fraction(1, 4), -r1 - Fraction(1, 4), -r2 + Fraction(1, 4)]
        from tightdesign.exactmath import UniPoly

        F = UniPoly.from_roots(roots)
        p2, p3, p4 = F.coeffs[2], F.coeffs[1], F.coeffs[0]
        assert p4 == (p2 / 2 + Fraction(1, 8)) ** 2 - p3**2
        # a perturbed gap breaks the identity
        G = UniPoly.from_roots([roots[0], roots[1] + Fraction(1, 3), roots[2], roots[3]])
        G = G.shift(-sum(G.coeffs[3:4]) / -4) if G.coeffs[3] else G
        c = G.coeffs
        if c[3] == 0:
            assert c[0] != (c[2] / 2 + Fraction(1, 8)) ** 2 - c[1] ** 2


def test_f_is_the_cleared_identity(f):
    # f(k, v) / residual(k, v) depends on v only (it is the cleared denominator)
    for v in (40, 77, 123):
        ratios = {f(k, v) / s4.p_coeffs(k, v, cross_check=False).identity_residual() for k in (9, 11, 15)}
        assert len(ratios) == 1


def test_planted_root_is_found():
    terms = dict(s4.f_literal())
    terms[(0, 0)] -= int(s4.f_poly()(17, 1000))
    assert s4.scan_block(17, 17, terms) == [(17, 1000)]


def test_desk_scan_is_empty():
    assert s4.scan_k_range(9, 2500).solutions == []


def test_scan_checkpoint(tmp_path):
    ck = str(tmp_path / "s4.ckpt")
    a = s4.scan_k_range(9, 1200, checkpoint_path=ck)
    assert len((tmp_path / "s4.ckpt").read_text().splitlines()) == 3
    b = s4.scan_k_range(9, 1200, checkpoint_path=ck)
    assert a.body() == b.body()


@pytest.mark.parametrize("p", sorted(SIEVE_CLASSES))
def test_sieve_classes(p):
    got = s4.congruence_sieve(p)
    ks, vs = SIEVE_CLASSES[p]
    assert set(got.k_classes) == ks
    assert set(got.v_classes) == vs


@pytest.mark.parametrize("p", sorted(SIEVE_CLASSES))
def test_sieve_soundness(p):
    rng = random.Random(p)
    f = s4.f_poly()
    ks, vs = SIEVE_CLASSES[p]
    for c in ks:
        for _ in range(100):
            k = c + p * rng.randint(1, 10**4)
            v = 2 * k + 1 + rng.randint(1, 10**5)
            assert f(k, v) % p != 0
    for c in vs:
        for _ in range(100):
            k = rng.randint(9, 10**4)
            v = c + p * rng.randint((2 * k) // p + 1, 10**5)
            assert f(k, v) % p != 0


def test_sieve_rejects_small_primes():
    with pytest.raises(ValueError):
        s4.congruence_sieve(3)
    with pytest.raises(ValueError):
        s4.congruence_sieve(15)
