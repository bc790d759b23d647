import itertools
import time

import pytest
from hypothesis import given, settings

from hyperpm import (BudgetExceeded, Configuration, TrialQueue, TrialStart, brute_force_match_set,
                     hpm_fjs, hpm_fjs_proj, hpm_naive, hpm_proj, run_trial, successors)
from hyperpm.benchmarks import build_counting_naa
from hyperpm.engine import EXTERNAL, Slice

from conftest import BIG_GOLDEN, BIG_WORD, naa_instances

ENGINES = [hpm_naive, hpm_fjs, hpm_proj, hpm_fjs_proj]


def test_queue_enumerates_every_start_in_order():
    q = TrialQueue([2, 3], 2)
    got = [(t.starts, t.word_ids) for t in q]
    want = sorted(((i1, i2), (w1, w2))
                  for w1, n1 in enumerate([2, 3]) for w2, n2 in enumerate([2, 3])
                  for i1 in range(1, n1 + 1) for i2 in range(1, n2 + 1))
    assert got == want
    assert q.total == 25 and len(got) == 25


def test_invalidation_drops_pending_entries():
    q = TrialQueue([3], 2)
    it = iter(q)
    assert next(it) == TrialStart((1, 1), (0, 0))
    q.invalidate(0, 1, 2)
    q.invalidate(0, 2, 3)
    rest = list(it)
    assert all(t.starts[0] != 2 and t.starts[1] != 3 for t in rest)
    # (1,2) plus (3,1) and (3,2).
    assert len(rest) == 3
    # (1,3), (2,*) and (3,3): five of nine entries.
    assert q.skipped[EXTERNAL] == 5
    assert 1 + len(rest) + q.skipped[EXTERNAL] == q.total


def test_invalidate_reports_and_ignores_out_of_range():
    seen = []
    q = TrialQueue([2], 1, on_invalidate=lambda *a: seen.append(a))
    q.invalidate(0, 1, 0)
    q.invalidate(0, 1, 5)
    q.invalidate(0, 1, 2)
    q.invalidate(0, 1, 2)
    assert seen == [("external", 0, 1, 2)]
    assert not q.is_valid(0, 1, 2) and q.is_valid(0, 1, 1)


def test_queue_with_words_of_different_lengths():
    q = TrialQueue([1, 3], 1)
    assert [t.starts + t.word_ids for t in q] == [(1, 0), (1, 1), (2, 1), (3, 1)]


def test_successors_consume_buffer_heads():
    naa = build_counting_naa()
    l0, l1, l2 = (naa.state_index(x) for x in ("l0", "l1", "l2"))
    cfg = Configuration((("#", "a"), ("#",)), l0)
    assert successors(naa, cfg) == {Configuration((("a",), ("#",)), l1)}
    nxt = successors(naa, Configuration((("a",), ("#",)), l1))
    assert nxt == {Configuration((("a",), ()), l2)}
    assert successors(naa, Configuration(((), ()), l0)) == set()


def test_single_trial_of_worked_example():
    naa = build_counting_naa()
    word = "# a # b".split()
    matches, reached = run_trial(naa, [word], TrialStart((1, 3), (0, 0)))
    assert matches == {(Slice(0, 1, 3), Slice(0, 3, 4))}
    assert naa.state_index("lf") in reached
    matches, _ = run_trial(naa, [word], TrialStart((2, 3), (0, 0)))
    assert matches == set()


@pytest.mark.parametrize("engine", ENGINES)
def test_engines_on_the_big_word(engine):
    matches, stats = engine(build_counting_naa(), [BIG_WORD])
    assert matches == BIG_GOLDEN
    assert stats.matches == len(BIG_GOLDEN)


@pytest.mark.parametrize("engine", ENGINES)
def test_stop_on_match(engine):
    matches, stats = engine(build_counting_naa(), [BIG_WORD], stop_on_match=True)
    assert matches and matches <= BIG_GOLDEN
    assert stats.trials < stats.queue_size


def test_deadline_in_the_past():
    words = [tuple("ab" * 40)]
    with pytest.raises(BudgetExceeded):
        hpm_naive(build_counting_naa(), words * 3, deadline=time.perf_counter() - 1)


@settings(max_examples=80, deadline=None)
@given(naa_instances())
def test_naive_equals_oracle(instance):
    naa, words = instance
    assert hpm_naive(naa, words)[0] == brute_force_match_set(naa, words)


@settings(max_examples=60, deadline=None)
@given(naa_instances())
def test_pruning_does_not_change_matches(instance):
    naa, words = instance
    assert hpm_naive(naa, words, prune=False)[0] == hpm_naive(naa, words)[0]


@settings(max_examples=80, deadline=None)
@given(naa_instances())
def test_queue_accounting_is_exact(instance):
    naa, words = instance
    naive_total = sum(map(len, words)) ** naa.k
    for engine in ENGINES:
        _, st = engine(naa, words)
        assert st.queue_size == naive_total
        assert st.trials + st.skipped_qs + st.skipped_kmp + st.pruned_by_projection == naive_total
    _, st = hpm_fjs(naa, words, tail_bound=True)
    assert st.trials + st.skipped_qs + st.skipped_kmp + st.pruned_by_projection == naive_total


def test_parallel_mode_replays_sequential_order():
    naa = build_counting_naa()
    words = [BIG_WORD, "# a a # b b #".split()]
    for engine in (hpm_naive, hpm_fjs_proj):
        seq, s1 = engine(naa, words)
        par, s2 = engine(naa, words, n_jobs=2)
        assert seq == par
        d1, d2 = s1.as_dict(), s2.as_dict()
        d1.pop("elapsed"), d2.pop("elapsed")
        assert d1 == d2


def test_initially_accepting_state_matches_empty_slices():
    from hyperpm import Naa

    naa = Naa(("a",), 2, 1, frozenset({0}), frozenset({0}), frozenset())
    words = [("a", "a")]
    expected = {(Slice(0, i, i - 1), Slice(0, j, j - 1))
                for i, j in itertools.product((1, 2), repeat=2)}
    for engine in ENGINES:
        assert engine(naa, words)[0] == expected
