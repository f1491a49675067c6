import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tightdesign.search import (
    AlphaTask,
    CheckpointError,
    SearchConfig,
    alpha_count,
    g_alpha,
    g_from_t,
    n_max,
    n_min,
    read_checkpoint,
    run_search,
    scan_alpha,
    scan_brute,
    scan_chunk,
    scan_exact,
    v_from_n,
)
from tightdesign.search.runner import run_search_until


def test_g_alpha_value():
    # 10 * (1 + 23/133)
    assert g_alpha(5, 1, 11) == Fraction(1560, 133)


def test_two_forms_agree_for_witt():
    # v = 23, k = 7, s = 2: alpha = 3/2, n = 5, t = n / alpha
    alpha = Fraction(3, 2)
    assert g_from_t(2, alpha, 5 / alpha) == g_alpha(2, alpha, 5)
    assert g_alpha(2, alpha, 5).denominator == 1
    assert v_from_n(2, 3, 5) == 23


def test_monotone_and_limit():
    prev = g_alpha(5, 1, n_min(5, 5))
    for n in range(n_min(5, 5) + 1, 3000):
        cur = g_alpha(5, 1, n)
        assert cur < prev
        prev = cur
    assert 0 < g_alpha(5, 1, 10**9) - 10 < Fraction(1, 10**7)


def test_n_range():
    assert n_min(5, 40) == 17  # floor(2 * 8) + 1
    assert n_min(5, 3) == 5
    for s, m in [(5, 1), (5, 77), (7, 1234)]:
        hi = n_max(s, m)
        G = Fraction(s * (s - 1) // 2 * m * m, s * s).__floor__() + 1
        assert g_alpha(s, Fraction(m, s), hi) <= G
        if hi > n_min(s, m):
            assert g_alpha(s, Fraction(m, s), hi - 1) > G


def test_alpha_count():
    assert alpha_count(5, Fraction("33.76")) == 22794


def test_alpha_task():
    t = AlphaTask.for_m(5, 10)
    assert t.alpha == 2 and t.n_min == 5 and t.status == "pending"
    with pytest.raises(ValueError):
        scan_alpha(5, AlphaTask(Fraction(1, 3), 5, 9))


def test_phase_equivalence_random():
    rng = random.Random(7)
    for _ in range(200):
        s = rng.randint(4, 9)
        m = rng.randint(1, 400)
        assert scan_exact(s, m) == scan_brute(s, m)


@given(st.integers(4, 9), st.integers(1, 3000))
@settings(max_examples=150, deadline=None)
def test_compiled_prefilter_matches_exact(s, m):
    got = scan_chunk(s, [m])[0]
    ref = scan_chunk(s, [m], use_kernel=False)[0]
    assert got == ref


@given(st.integers(4, 9), st.integers(1, 300), st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(3)]))
@settings(max_examples=60, deadline=None)
def test_threshold_does_not_change_hits(s, m, thr):
    assert scan_exact(s, m, thr) == scan_brute(s, m)


def test_emitted_pairs_satisfy_v_relation():
    for m in range(1, 400):
        for k, v in scan_alpha(5, AlphaTask.for_m(5, m)):
            n = k - 5
            assert Fraction(m, 5) * (v - 2 * 5 + 1) == n * n + n
            assert n > 2 * Fraction(m, 5)  # t > 2


def test_small_search_has_no_survivors(tmp_path):
    rep = run_search(SearchConfig(5, Fraction(8), report_path=str(tmp_path / "r.json")))
    assert rep.survivors == []
    assert rep.alphas_scanned == alpha_count(5, 8)
    body = json.loads((tmp_path / "r.json").read_text())
    assert body["alpha_count"] == rep.alpha_count


def test_resume_is_identical(tmp_path):
    ck = str(tmp_path / "c.ckpt")
    fresh = run_search(SearchConfig(5, Fraction(7), partitions=40))
    cfg = SearchConfig(5, Fraction(7), partitions=40, checkpoint_path=ck)
    assert run_search_until(cfg, fresh.alphas_scanned // 2)
    assert 0 < len(read_checkpoint(ck, 5)) < fresh.alphas_scanned
    resumed = run_search(cfg)
    assert json.dumps(resumed.body(), sort_keys=True) == json.dumps(fresh.body(), sort_keys=True)


def test_interrupted_last_line_is_tolerated(tmp_path):
    ck = tmp_path / "c.ckpt"
    ck.write_text('1/5 done g=0 []\n2/5 done g=0 [')
    assert list(read_checkpoint(ck, 5)) == [1]


def test_corrupt_checkpoint_names_line(tmp_path):
    ck = tmp_path / "c.ckpt"
    ck.write_text("1/5 done g=0 []\ngarbage\n")
    with pytest.raises(CheckpointError, match=":2:"):
        read_checkpoint(ck, 5)
    ck.write_text("1/6 done g=0 []\n")
    with pytest.raises(CheckpointError, match="s=6"):
        read_checkpoint(ck, 5)


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(5, Fraction(0))
    with pytest.raises(ValueError):
        SearchConfig(5, 3, derivative_threshold=0)


def test_parallel_matches_serial():
    a = run_search(SearchConfig(5, Fraction(6), partitions=50))
    b = run_search(SearchConfig(5, Fraction(6), partitions=50, jobs=2))
    assert a.body() == b.body()
